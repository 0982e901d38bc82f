#include "attrecon/cheb_poly.hpp"

#include <sstream>

namespace attrecon {

namespace {
// Sample times k/rate land a few ulps off t_N; accept and clamp those.
constexpr double kEndpointSlack = 1e-12;
} // namespace

IntervalMap::IntervalMap(double t_N) : t_N_(t_N) {
    if (!(t_N > 0.0) || !std::isfinite(t_N)) {
        throw std::invalid_argument("IntervalMap: t_N must be positive and finite");
    }
}

double IntervalMap::to_tau(double t) const {
    const double slack = kEndpointSlack * t_N_;
    if (!(t >= -slack && t <= t_N_ + slack)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "time_map: t = " << t << " outside [0, " << t_N_ << "]";
        throw std::out_of_range(msg.str());
    }
    return std::clamp(2.0 * t / t_N_ - 1.0, -1.0, 1.0);
}

double IntervalMap::to_time(double tau) const {
    if (!(tau >= -1.0 && tau <= 1.0)) {
        throw std::out_of_range("inverse_time_map: tau outside [-1, 1]");
    }
    return 0.5 * t_N_ * (1.0 + tau);
}

double time_map(double t, const IntervalMap& map) { return map.to_tau(t); }
double inverse_time_map(double tau, const IntervalMap& map) { return map.to_time(tau); }

} // namespace attrecon

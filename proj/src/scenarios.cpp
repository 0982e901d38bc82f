#include "attrecon/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace attrecon {

Vec3 coning_omega(const ConingSpec& spec, double t) {
    const double half_sin = std::sin(0.5 * spec.alpha);
    const double sa = std::sin(spec.alpha);
    const double phase = spec.Omega * t;
    return spec.Omega * Vec3(-2.0 * half_sin * half_sin, -sa * std::sin(phase), sa * std::cos(phase));
}

Quaternion coning_truth(const ConingSpec& spec, double t) {
    if (!(spec.alpha >= 0.0 && spec.alpha < std::numbers::pi)) {
        throw std::domain_error("coning_truth: cone half-angle must lie in [0, pi)");
    }
    const double phase = spec.Omega * t;
    const Vec3 g = 2.0 * std::tan(0.5 * spec.alpha) * Vec3(0.0, std::cos(phase), std::sin(phase));
    return rodrigues_to_quat(g);
}

Vec3 coning_increment(const ConingSpec& spec, double t0, double t1) {
    const double half_sin = std::sin(0.5 * spec.alpha);
    const double sa = std::sin(spec.alpha);
    // Product forms of cos b - cos a and sin b - sin a avoid cancellation for short sub-intervals.
    const double mid = 0.5 * spec.Omega * (t0 + t1);
    const double half_span = std::sin(0.5 * spec.Omega * (t1 - t0));
    return {-2.0 * spec.Omega * half_sin * half_sin * (t1 - t0),
            -2.0 * sa * std::sin(mid) * half_span,
            2.0 * sa * std::cos(mid) * half_span};
}

Quaternion constant_truth(const ConstantRateSpec& spec, double t) { return rotvec_to_quat(spec.omega * t); }

Scenario::Scenario(ConingSpec spec) : spec_(spec) {
    if (!(spec.alpha >= 0.0 && spec.alpha < std::numbers::pi) || !std::isfinite(spec.Omega)) {
        throw std::invalid_argument("ConingSpec: need 0 <= alpha < pi and finite Omega");
    }
}

Scenario::Scenario(ConstantRateSpec spec) : spec_(spec) {
    if (!spec.omega.allFinite()) {
        throw std::invalid_argument("ConstantRateSpec: omega must be finite");
    }
}

namespace {
template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
} // namespace

Vec3 Scenario::omega(double t) const {
    return std::visit(overloaded{[t](const ConingSpec& s) { return coning_omega(s, t); },
                                 [](const ConstantRateSpec& s) -> Vec3 { return s.omega; }},
                      spec_);
}

Quaternion Scenario::truth(double t) const {
    return std::visit(overloaded{[t](const ConingSpec& s) { return coning_truth(s, t); },
                                 [t](const ConstantRateSpec& s) { return constant_truth(s, t); }},
                      spec_);
}

Vec3 Scenario::increment(double t0, double t1) const {
    return std::visit(overloaded{[=](const ConingSpec& s) { return coning_increment(s, t0, t1); },
                                 [=](const ConstantRateSpec& s) -> Vec3 { return s.omega * (t1 - t0); }},
                      spec_);
}

Quaternion Scenario::relative_truth(double t0, double t) const { return quat_mul(truth(t0).conjugate(), truth(t)); }

std::string Scenario::name() const {
    return std::holds_alternative<ConingSpec>(spec_) ? "coning" : "constant";
}

int SamplingSpec::total_samples() const { return static_cast<int>(std::llround(duration_s * rate_hz)); }

int SamplingSpec::interval_count() const { return total_samples() / samples_per_interval; }

void SamplingSpec::validate() const {
    if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
        throw std::invalid_argument("SamplingSpec: rate must be positive");
    }
    if (samples_per_interval < 2) {
        throw std::invalid_argument("SamplingSpec: samples per interval must be >= 2");
    }
    if (!(duration_s > 0.0)) {
        throw std::invalid_argument("SamplingSpec: duration must be positive");
    }
    const double samples = duration_s * rate_hz;
    if (std::abs(samples - std::round(samples)) > 1e-9 * std::max(1.0, samples) ||
        total_samples() % samples_per_interval != 0) {
        std::ostringstream msg;
        msg << "SamplingSpec: duration " << duration_s << " s is not a multiple of the update interval "
            << interval_length() << " s";
        throw std::invalid_argument(msg.str());
    }
}

GyroBatch generate_gyro_batch(const Scenario& scenario, const SamplingSpec& sampling, int interval_index) {
    sampling.validate();
    if (interval_index < 0 || interval_index >= sampling.interval_count()) {
        throw std::out_of_range("generate_gyro_batch: interval index outside the run");
    }
    const int n = sampling.samples_per_interval;
    const int first = interval_index * n;
    GyroBatch batch;
    batch.t_N = sampling.interval_length();
    batch.mode = sampling.mode;
    for (int k = 1; k <= n; ++k) {
        const double end = (first + k) / sampling.rate_hz;
        const double start = (first + k - 1) / sampling.rate_hz;
        batch.times.push_back(k / sampling.rate_hz);
        batch.samples.push_back(sampling.mode == SampleMode::rate ? scenario.omega(end)
                                                                  : scenario.increment(start, end));
    }
    return batch;
}

MeasurementStream generate_measurements(const Scenario& scenario, double rate_hz, double duration_s, SampleMode mode) {
    if (!(rate_hz > 0.0) || !(duration_s > 0.0)) {
        throw std::invalid_argument("generate_measurements: rate and duration must be positive");
    }
    const double count = duration_s * rate_hz;
    if (std::abs(count - std::round(count)) > 1e-9 * std::max(1.0, count)) {
        throw std::invalid_argument("generate_measurements: duration is not a whole number of samples");
    }
    MeasurementStream stream;
    stream.mode = mode;
    stream.rate_hz = rate_hz;
    const int total = static_cast<int>(std::llround(count));
    stream.samples.reserve(static_cast<std::size_t>(total));
    for (int k = 1; k <= total; ++k) {
        const double end = k / rate_hz;
        const double start = (k - 1) / rate_hz;
        stream.samples.push_back(
            {end, mode == SampleMode::rate ? scenario.omega(end) : scenario.increment(start, end)});
    }
    return stream;
}

GyroBatch batch_from_stream(const MeasurementStream& stream, int samples_per_interval, int interval_index) {
    const std::size_t first = static_cast<std::size_t>(interval_index) * static_cast<std::size_t>(samples_per_interval);
    if (samples_per_interval < 1 || interval_index < 0 || first + samples_per_interval > stream.samples.size()) {
        throw std::out_of_range("batch_from_stream: interval outside the measurement stream");
    }
    GyroBatch batch;
    batch.t_N = samples_per_interval / stream.rate_hz;
    batch.mode = stream.mode;
    for (int k = 1; k <= samples_per_interval; ++k) {
        batch.times.push_back(k / stream.rate_hz);
        batch.samples.push_back(stream.samples[first + static_cast<std::size_t>(k) - 1].value);
    }
    return batch;
}

} // namespace attrecon

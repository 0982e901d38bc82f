#include "attrecon/gyro_fit.hpp"

#include <Eigen/QR>

#include <sstream>
#include <stdexcept>
#include <string>

namespace attrecon {

std::string_view to_string(SampleMode mode) {
    return mode == SampleMode::rate ? "rate" : "increment";
}

SampleMode parse_sample_mode(std::string_view text) {
    if (text == "rate") {
        return SampleMode::rate;
    }
    if (text == "increment") {
        return SampleMode::increment;
    }
    throw std::invalid_argument("unknown sample mode '" + std::string(text) + "' (expected rate|increment)");
}

void GyroBatch::validate() const {
    if (samples.empty()) {
        throw std::invalid_argument("GyroBatch: at least one sample is required");
    }
    if (times.size() != samples.size()) {
        throw std::invalid_argument("GyroBatch: times and samples differ in length");
    }
    if (!(t_N > 0.0)) {
        throw std::invalid_argument("GyroBatch: t_N must be positive");
    }
    const double slack = 1e-12 * t_N;
    double prev = 0.0;
    for (double t : times) {
        if (!(t > prev) || t > t_N + slack) {
            throw std::invalid_argument("GyroBatch: times must increase strictly within (0, t_N]");
        }
        prev = t;
    }
    if (mode == SampleMode::increment && std::abs(times.back() - t_N) > slack) {
        throw std::invalid_argument("GyroBatch: increments must partition [0, t_N]");
    }
    for (const auto& s : samples) {
        if (!s.allFinite()) {
            throw std::invalid_argument("GyroBatch: non-finite sample");
        }
    }
}

namespace {

void check_degree(const GyroBatch& batch, int n) {
    batch.validate();
    if (n < 0 || n > batch.size() - 1) {
        std::ostringstream msg;
        msg << "fit degree n = " << n << " must satisfy 0 <= n <= N - 1 = " << batch.size() - 1;
        throw std::invalid_argument(msg.str());
    }
}

OmegaFit solve(const Eigen::MatrixXd& design, const GyroBatch& batch) {
    Eigen::MatrixXd rhs(batch.size(), 3);
    for (int k = 0; k < batch.size(); ++k) {
        rhs.row(k) = batch.samples[static_cast<std::size_t>(k)].transpose();
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < design.cols()) {
        throw std::domain_error("gyro fit: rank-deficient design matrix");
    }
    const Eigen::MatrixXd sol = qr.solve(rhs);
    std::vector<Vec3> coeffs(static_cast<std::size_t>(design.cols()));
    for (Eigen::Index i = 0; i < design.cols(); ++i) {
        coeffs[static_cast<std::size_t>(i)] = sol.row(i).transpose();
    }
    return {ChebSeries<Vec3>(std::move(coeffs)), batch.t_N};
}

} // namespace

OmegaFit fit_rates(const GyroBatch& batch, int n) {
    check_degree(batch, n);
    const IntervalMap map(batch.t_N);
    Eigen::MatrixXd design(batch.size(), n + 1);
    for (int k = 0; k < batch.size(); ++k) {
        const double tau = map.to_tau(batch.times[static_cast<std::size_t>(k)]);
        // F_0, F_1 and the three-term recurrence.
        double f_prev = 1.0;
        double f_cur = tau;
        design(k, 0) = 1.0;
        if (n >= 1) {
            design(k, 1) = tau;
        }
        for (int i = 2; i <= n; ++i) {
            const double f_next = 2.0 * tau * f_cur - f_prev;
            design(k, i) = f_next;
            f_prev = f_cur;
            f_cur = f_next;
        }
    }
    return solve(design, batch);
}

OmegaFit fit_increments(const GyroBatch& batch, int n) {
    check_degree(batch, n);
    const IntervalMap map(batch.t_N);
    // Antiderivative G_i of each basis polynomial, as a series.
    std::vector<ChebSeries<double>> antideriv;
    antideriv.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        ChebSeries<double> unit = ChebSeries<double>::zeros(i);
        unit[static_cast<std::size_t>(i)] = 1.0;
        antideriv.push_back(cheb_integrate(unit));
    }
    const double half = 0.5 * batch.t_N;
    Eigen::MatrixXd design(batch.size(), n + 1);
    double tau_prev = -1.0;
    for (int k = 0; k < batch.size(); ++k) {
        const double tau = map.to_tau(batch.times[static_cast<std::size_t>(k)]);
        for (int i = 0; i <= n; ++i) {
            const auto& g = antideriv[static_cast<std::size_t>(i)];
            design(k, i) = half * (cheb_eval(g, tau) - cheb_eval(g, tau_prev));
        }
        tau_prev = tau;
    }
    return solve(design, batch);
}

OmegaFit fit_batch(const GyroBatch& batch, std::optional<int> n) {
    const int degree = n.value_or(batch.size() - 1);
    return batch.mode == SampleMode::rate ? fit_rates(batch, degree) : fit_increments(batch, degree);
}

Vec3 eval_omega(const OmegaFit& fit, double t) {
    return cheb_eval(fit.coeffs, IntervalMap(fit.t_N).to_tau(t));
}

double sup_norm_estimate(const OmegaFit& fit, int points) {
    if (points < 2) {
        throw std::invalid_argument("sup_norm_estimate: need at least two grid points");
    }
    double sup = 0.0;
    for (int k = 0; k < points; ++k) {
        const double tau = -1.0 + 2.0 * k / (points - 1);
        sup = std::max(sup, cheb_eval(fit.coeffs, tau).norm());
    }
    return sup;
}

} // namespace attrecon

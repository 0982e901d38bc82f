#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "attrecon/cheb_poly.hpp"
#include "attrecon/quat_algebra.hpp"

namespace attrecon {

enum class SampleMode { rate, increment };

std::string_view to_string(SampleMode mode);
SampleMode parse_sample_mode(std::string_view text);

/**
 * N gyro measurements over one update interval [0, t_N].
 *
 * times[k] is the end of the k-th sub-interval (interval-relative). In rate
 * mode samples[k] is ω(times[k]); in increment mode samples[k] is the
 * integral of ω over [times[k-1], times[k]] with times[-1] = 0, so the last
 * time must equal t_N.
 */
struct GyroBatch {
    double t_N = 0.0;
    SampleMode mode = SampleMode::increment;
    std::vector<double> times;
    std::vector<Vec3> samples;

    int size() const { return static_cast<int>(samples.size()); }
    /// Throws std::invalid_argument when the invariants above do not hold.
    void validate() const;
};

/// Fitted angular velocity ω̂(τ) = Σ c_i F_i(τ) over [0, t_N].
struct OmegaFit {
    ChebSeries<Vec3> coeffs;
    double t_N = 0.0;

    int degree() const { return coeffs.degree(); }
};

/// Least-squares fit of rate samples. Requires n <= N - 1.
OmegaFit fit_rates(const GyroBatch& batch, int n);

/// Least-squares fit of angular increments. Requires n <= N - 1.
OmegaFit fit_increments(const GyroBatch& batch, int n);

/// Dispatches on batch.mode; degree defaults to N - 1.
OmegaFit fit_batch(const GyroBatch& batch, std::optional<int> n = std::nullopt);

Vec3 eval_omega(const OmegaFit& fit, double t);

/// max |ω̂| over a uniform grid of `points` values of tau (endpoints included).
double sup_norm_estimate(const OmegaFit& fit, int points = 257);

} // namespace attrecon

#pragma once

// Functional iterative integration of q̇ = ½ q ∘ ω in Chebyshev-coefficient
// space, with per-iteration truncation.
//
//   q_{l+1}(τ) = 1 + (t_N/4) ∫_{-1}^{τ} q_l ∘ ω̂ dτ,   q_0 ≡ 1.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "attrecon/cheb_poly.hpp"
#include "attrecon/gyro_fit.hpp"
#include "attrecon/quat_algebra.hpp"

namespace attrecon {

/// Raised when an iterate picks up non-finite coefficients.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, int iteration)
        : std::runtime_error(what), iteration_(iteration) {}
    int iteration() const { return iteration_; }

private:
    int iteration_;
};

/// Truncation degree used when none is given: n + 2.
inline int default_truncation(int fit_degree) { return fit_degree + 2; }

struct QuatIterState {
    ChebSeries<Quaternion> b;
    int iteration = 0;
    std::optional<int> truncation;  ///< n_T; nullopt keeps every degree.
    double t_N = 0.0;
    /// b_{l, n_T+1} from the step that produced this state (zero if nothing was dropped).
    Quaternion first_dropped = Quaternion::Zero();

    /// q_0 ≡ 1.
    static QuatIterState initial(double t_N, std::optional<int> truncation);
};

struct IterationOptions {
    int max_iterations = 7;
    std::optional<int> truncation;
    /// Stop once the coefficient-change RMS falls below this; 0 disables.
    double stop_rms = 0.0;
};

struct QuatSolution {
    ChebSeries<Quaternion> b;
    double t_N = 0.0;
    int iterations_run = 0;
    bool converged = false;
    std::vector<double> rms_history;
    Quaternion first_dropped = Quaternion::Zero();
};

using QuatObserver = std::function<void(const QuatIterState&)>;

/// One iteration. Throws std::invalid_argument if state and fit disagree on t_N.
QuatIterState quatfiter_step(const QuatIterState& state, const OmegaFit& fit);

/// ω̂ coefficients as zero-scalar quaternions.
ChebSeries<Quaternion> promote_to_quaternions(const ChebSeries<Vec3>& omega);

/// quatfiter_step on an already promoted ω̂.
QuatIterState quatfiter_step(const QuatIterState& state, const ChebSeries<Quaternion>& omega_quat,
                             double t_N);

/**
 * Iterates from `initial` (default q_0 ≡ 1) until max_iterations or the stop
 * criterion. The observer, when set, sees every new state.
 * Throws DivergenceError naming the iteration on non-finite coefficients.
 */
QuatSolution quatfiter_run(const OmegaFit& fit, const IterationOptions& options,
                           const QuatObserver& observer = {},
                           std::optional<ChebSeries<Quaternion>> initial = std::nullopt);

/// rms of all scalar entries of (next - prev), zero-padded to a common degree.
double coefficient_change_rms(const ChebSeries<Quaternion>& prev, const ChebSeries<Quaternion>& next);

/// Unnormalized iterate q̂_l(t).
Quaternion eval_raw(const QuatSolution& sol, double t);

/// q̂_l(t) / |q̂_l(t)|.
Quaternion eval_attitude(const QuatSolution& sol, double t);

/// t_N sup|δω| + |b_{l, n_T+1}|; approximate for small iteration counts.
double error_bound_estimate(const QuatSolution& sol, double sup_domega);

} // namespace attrecon

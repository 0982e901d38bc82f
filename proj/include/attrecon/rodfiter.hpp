#pragma once

// The same coefficient-space iteration applied to the Rodrigues vector,
//   ġ = ω + ½ g × ω + ¼ (gᵀω) g,   g_0 ≡ 0,
// with the attitude recovered as (2 + g) / sqrt(4 + |g|²).

#include <functional>
#include <optional>
#include <vector>

#include "attrecon/cheb_poly.hpp"
#include "attrecon/gyro_fit.hpp"
#include "attrecon/quatfiter.hpp"

namespace attrecon {

/// Sufficient convergence condition t_N sup|ω| < 2.
inline constexpr double kRodriguesConvergenceLimit = 2.0;

struct RodIterState {
    ChebSeries<Vec3> b;
    int iteration = 0;
    std::optional<int> truncation;
    double t_N = 0.0;
    Vec3 first_dropped = Vec3::Zero();

    /// g_0 ≡ 0.
    static RodIterState initial(double t_N, std::optional<int> truncation);
};

struct RodSolution {
    ChebSeries<Vec3> g;
    double t_N = 0.0;
    int iterations_run = 0;
    bool converged = false;
    std::vector<double> rms_history;
};

using RodObserver = std::function<void(const RodIterState&)>;

RodIterState rodfiter_step(const RodIterState& state, const OmegaFit& fit);

/// Throws std::domain_error when t_N sup|ω̂| >= 2, DivergenceError on non-finite coefficients.
RodSolution rodfiter_run(const OmegaFit& fit, const IterationOptions& options, const RodObserver& observer = {});

double coefficient_change_rms(const ChebSeries<Vec3>& prev, const ChebSeries<Vec3>& next);

Vec3 eval_rodrigues(const RodSolution& sol, double t);
Quaternion eval_attitude(const RodSolution& sol, double t);

} // namespace attrecon

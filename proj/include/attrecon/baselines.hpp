#pragma once

// Reference integrators for comparison: the two-sample coning algorithm,
// normalized RK4, 4th-order Crouch-Grossman and a time-domain Picard oracle.

#include <functional>
#include <vector>

#include "attrecon/quat_algebra.hpp"

namespace attrecon {

using OmegaSource = std::function<Vec3(double)>;

struct StepContext {
    OmegaSource omega;
    double h = 0.0;     ///< update interval (s)
    int substeps = 1;   ///< integrator steps per update interval
};

/// Rotation vector Δθ1 + Δθ2 + (2/3) Δθ1 × Δθ2 as a quaternion.
Quaternion two_sample_update(const Vec3& dtheta1, const Vec3& dtheta2);

/// One classical RK4 step of q̇ = ½ q ∘ ω(t) from t to t + h, then normalized.
Quaternion rk4n_step(const OmegaSource& omega, double t, double h, const Quaternion& q);

/// One 5-stage 4th-order Crouch-Grossman step (products of exact exponentials), then normalized.
Quaternion cg4n_step(const OmegaSource& omega, double t, double h, const Quaternion& q);

/// Integrates from t0 to t1 in update intervals of ctx.h (last one shortened if needed).
Quaternion rk4n_integrate(const StepContext& ctx, double t0, double t1, const Quaternion& q0 = Quaternion::identity());
Quaternion cg4n_integrate(const StepContext& ctx, double t0, double t1, const Quaternion& q0 = Quaternion::identity());

struct PicardGrid {
    std::vector<double> times;
    std::vector<Quaternion> values;
};

/**
 * l-th Picard iterate of q = 1 + ½ ∫_0^t q ∘ ω on a uniform grid of
 * `intervals` + 1 points over [0, t_N], using a 4th-order cumulative
 * quadrature (cubic Lagrange panels).
 */
PicardGrid picard_reference(const OmegaSource& omega, double t_N, int l, int intervals = 10000);

} // namespace attrecon

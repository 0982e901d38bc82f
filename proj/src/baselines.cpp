#include "attrecon/baselines.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace attrecon {

Quaternion two_sample_update(const Vec3& dtheta1, const Vec3& dtheta2) {
    const Vec3 phi = dtheta1 + dtheta2 + (2.0 / 3.0) * dtheta1.cross(dtheta2);
    return rotvec_to_quat(phi);
}

Quaternion rk4n_step(const OmegaSource& omega, double t, double h, const Quaternion& q) {
    auto rate = [&](double tt, const Quaternion& qq) { return 0.5 * quat_mul_pure(qq, omega(tt)); };
    const Quaternion k1 = rate(t, q);
    const Quaternion k2 = rate(t + 0.5 * h, q + (0.5 * h) * k1);
    const Quaternion k3 = rate(t + 0.5 * h, q + (0.5 * h) * k2);
    const Quaternion k4 = rate(t + h, q + h * k3);
    return quat_normalize(q + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

namespace {

// Crouch-Grossman 5-stage order-4 method (Owren & Marthinsen, 1999).
constexpr std::array<double, 5> kCgC{0.0, 0.8177227988124852, 0.3859740639032449, 0.3242290522866937,
                                     0.8768903263420429};
constexpr std::array<double, 5> kCgB{0.1370831520630755, -0.0183698531564020, 0.7397813985370780,
                                     -0.1907142565505889, 0.3322195591068374};
[[maybe_unused]] constexpr std::array<std::array<double, 4>, 5> kCgA{{
    {0.0, 0.0, 0.0, 0.0},
    {0.8177227988124852, 0.0, 0.0, 0.0},
    {0.3199876375476427, 0.0659864263556022, 0.0, 0.0},
    {0.9214417194542228, 0.4997857776773573, -1.0969984448371582, 0.0},
    {0.3552358559023322, 0.2390958372307326, 1.3918565724203246, -1.1092979392113565},
}};

template <typename Step>
Quaternion integrate(const StepContext& ctx, double t0, double t1, const Quaternion& q0, Step step) {
    if (!(ctx.h > 0.0)) {
        throw std::invalid_argument("integrator: step size must be positive");
    }
    if (ctx.substeps < 1) {
        throw std::invalid_argument("integrator: substeps must be >= 1");
    }
    if (t1 < t0) {
        throw std::invalid_argument("integrator: t1 < t0");
    }
    const double span = t1 - t0;
    const double ratio = span / ctx.h;
    long whole = std::lround(std::floor(ratio + 1e-9));
    Quaternion q = q0;
    const double sub = ctx.h / ctx.substeps;
    for (long k = 0; k < whole; ++k) {
        const double start = t0 + k * ctx.h;
        for (int j = 0; j < ctx.substeps; ++j) {
            q = step(ctx.omega, start + j * sub, sub, q);
        }
    }
    const double rest = span - whole * ctx.h;
    if (rest > 1e-12 * ctx.h) {
        q = step(ctx.omega, t0 + whole * ctx.h, rest, q);
    }
    return q;
}

} // namespace

Quaternion cg4n_step(const OmegaSource& omega, double t, double h, const Quaternion& q) {
    // q̇ = q ∘ (ω/2) acts by right multiplication, so the update composes
    // exponentials on the right in stage order. The stage rates do not depend
    // on the stage states here, so the inner stage compositions are not needed.
    std::array<Vec3, 5> stage_omega;
    for (std::size_t i = 0; i < 5; ++i) {
        stage_omega[i] = omega(t + kCgC[i] * h);
    }
    Quaternion out = q;
    for (std::size_t i = 0; i < 5; ++i) {
        out = quat_mul(out, rotvec_to_quat(h * kCgB[i] * stage_omega[i]));
    }
    return quat_normalize(out);
}

Quaternion rk4n_integrate(const StepContext& ctx, double t0, double t1, const Quaternion& q0) {
    return integrate(ctx, t0, t1, q0, rk4n_step);
}

Quaternion cg4n_integrate(const StepContext& ctx, double t0, double t1, const Quaternion& q0) {
    return integrate(ctx, t0, t1, q0, cg4n_step);
}

PicardGrid picard_reference(const OmegaSource& omega, double t_N, int l, int intervals) {
    if (l < 1) {
        throw std::invalid_argument("picard_reference: l must be >= 1");
    }
    if (intervals < 3) {
        throw std::invalid_argument("picard_reference: need at least 3 quadrature intervals");
    }
    if (!(t_N > 0.0)) {
        throw std::invalid_argument("picard_reference: t_N must be positive");
    }
    const std::size_t points = static_cast<std::size_t>(intervals) + 1;
    const double h = t_N / intervals;
    PicardGrid grid;
    grid.times.resize(points);
    std::vector<Vec3> w(points);
    for (std::size_t j = 0; j < points; ++j) {
        grid.times[j] = (j == points - 1) ? t_N : static_cast<double>(j) * h;
        w[j] = omega(grid.times[j]);
    }

    std::vector<Quaternion> q(points, Quaternion::identity());
    std::vector<Quaternion> f(points);
    const std::size_t last = points - 1;
    for (int iter = 0; iter < l; ++iter) {
        for (std::size_t j = 0; j < points; ++j) {
            f[j] = 0.5 * quat_mul_pure(q[j], w[j]);
        }
        // Panel integrals of the cubic through four neighbouring nodes.
        std::vector<Quaternion> next(points);
        next[0] = Quaternion::identity();
        Quaternion acc = Quaternion::identity();
        for (std::size_t j = 0; j < last; ++j) {
            Quaternion panel;
            if (j == 0) {
                panel = (h / 24.0) * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
            } else if (j == last - 1) {
                panel = (h / 24.0) * (f[j - 2] - 5.0 * f[j - 1] + 19.0 * f[j] + 9.0 * f[j + 1]);
            } else {
                panel = (h / 24.0) * (-1.0 * f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2]);
            }
            acc += panel;
            next[j + 1] = acc;
        }
        q = std::move(next);
    }
    grid.values = std::move(q);
    return grid;
}

} // namespace attrecon

#include "attrecon/rodfiter.hpp"

#include <cmath>
#include <sstream>

namespace attrecon {

RodIterState RodIterState::initial(double t_N, std::optional<int> truncation) {
    RodIterState s;
    s.b = ChebSeries<Vec3>::constant(Vec3::Zero());
    s.t_N = t_N;
    s.truncation = truncation;
    return s;
}

RodIterState rodfiter_step(const RodIterState& state, const OmegaFit& fit) {
    if (state.t_N != fit.t_N) {
        throw std::invalid_argument("rodfiter_step: state and fit cover different intervals");
    }
    const auto& g = state.b;
    const auto& c = fit.coeffs;

    // ω + ½ g×ω + ¼ (g gᵀ) ω. The cubic term goes through the outer-product
    // series g gᵀ and a matrix-vector contraction with ω; each cheb_product
    // contributes one ½, so the cubic coefficients carry 1/16 overall.
    ChebSeries<Vec3> rate = c;
    ChebSeries<Vec3> quadratic = cheb_product(g, c, [](const Vec3& a, const Vec3& w) -> Vec3 { return a.cross(w); });
    quadratic *= 0.5;
    rate += quadratic;

    const ChebSeries<Mat3> outer =
        cheb_product(g, g, [](const Vec3& a, const Vec3& b) -> Mat3 { return a * b.transpose(); });
    ChebSeries<Vec3> cubic = cheb_product(outer, c, [](const Mat3& m, const Vec3& w) -> Vec3 { return m * w; });
    cubic *= 0.25;
    rate += cubic;

    ChebSeries<Vec3> next = cheb_integrate(rate);
    next *= 0.5 * fit.t_N;

    RodIterState out;
    out.iteration = state.iteration + 1;
    out.truncation = state.truncation;
    out.t_N = fit.t_N;
    if (state.truncation && next.degree() > *state.truncation) {
        out.first_dropped = next[static_cast<std::size_t>(*state.truncation + 1)];
        next.resize(*state.truncation);
    }
    out.b = std::move(next);
    return out;
}

double coefficient_change_rms(const ChebSeries<Vec3>& prev, const ChebSeries<Vec3>& next) {
    const int degree = std::max(prev.degree(), next.degree());
    double sum = 0.0;
    for (int i = 0; i <= degree; ++i) {
        sum += (next.coeff_or_zero(i) - prev.coeff_or_zero(i)).squaredNorm();
    }
    return std::sqrt(sum / (3.0 * (degree + 1)));
}

RodSolution rodfiter_run(const OmegaFit& fit, const IterationOptions& options, const RodObserver& observer) {
    if (options.max_iterations < 1) {
        throw std::invalid_argument("rodfiter_run: max_iterations must be >= 1");
    }
    // Σ|c_i| bounds sup|ω̂| from above since |F_i| <= 1; sample densely only when it is inconclusive.
    double coeff_bound = 0.0;
    for (const auto& ci : fit.coeffs.coeffs()) {
        coeff_bound += ci.norm();
    }
    const double reach = fit.t_N * coeff_bound < kRodriguesConvergenceLimit
                             ? fit.t_N * coeff_bound
                             : fit.t_N * sup_norm_estimate(fit);
    if (!(reach < kRodriguesConvergenceLimit)) {
        std::ostringstream msg;
        msg << "rodfiter_run: t_N sup|omega| = " << reach << " violates the convergence condition (< 2)";
        throw std::domain_error(msg.str());
    }

    RodIterState state = RodIterState::initial(fit.t_N, options.truncation);
    RodSolution sol;
    sol.t_N = fit.t_N;
    for (int l = 0; l < options.max_iterations; ++l) {
        RodIterState next = rodfiter_step(state, fit);
        if (!next.b.all_finite()) {
            throw DivergenceError("rodfiter_run: non-finite coefficients at iteration " +
                                      std::to_string(next.iteration),
                                  next.iteration);
        }
        const double rms = coefficient_change_rms(state.b, next.b);
        sol.rms_history.push_back(rms);
        state = std::move(next);
        if (observer) {
            observer(state);
        }
        if (rms < options.stop_rms) {
            sol.converged = true;
            break;
        }
    }
    sol.iterations_run = state.iteration;
    sol.g = std::move(state.b);
    return sol;
}

Vec3 eval_rodrigues(const RodSolution& sol, double t) { return cheb_eval(sol.g, IntervalMap(sol.t_N).to_tau(t)); }

Quaternion eval_attitude(const RodSolution& sol, double t) { return rodrigues_to_quat(eval_rodrigues(sol, t)); }

} // namespace attrecon

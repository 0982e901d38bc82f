#include "attrecon/quatfiter.hpp"

#include <cmath>
#include <sstream>

namespace attrecon {

namespace {

void check_interval(double state_t_N, double fit_t_N) {
    if (state_t_N != fit_t_N) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "interval mismatch: state t_N = " << state_t_N << ", fit t_N = " << fit_t_N;
        throw std::invalid_argument(msg.str());
    }
}

} // namespace

QuatIterState QuatIterState::initial(double t_N, std::optional<int> truncation) {
    QuatIterState s;
    s.b = ChebSeries<Quaternion>::constant(Quaternion::identity());
    s.t_N = t_N;
    s.truncation = truncation;
    return s;
}

ChebSeries<Quaternion> promote_to_quaternions(const ChebSeries<Vec3>& omega) {
    std::vector<Quaternion> out;
    out.reserve(omega.size());
    for (const auto& c : omega.coeffs()) {
        out.push_back(Quaternion::pure(c));
    }
    return ChebSeries<Quaternion>(std::move(out));
}

QuatIterState quatfiter_step(const QuatIterState& state, const ChebSeries<Quaternion>& omega_quat,
                             double t_N) {
    check_interval(state.t_N, t_N);
    // (t_N/4) ∫ q_l ∘ ω̂; cheb_product already carries the ½ of the product rule,
    // which together gives the t_N/8 factor on Σ Σ b_i ∘ c_j (G_{i+j} + G_{|i-j|}).
    ChebSeries<Quaternion> next = cheb_integrate(
        cheb_product(state.b, omega_quat, [](const Quaternion& a, const Quaternion& c) { return quat_mul(a, c); }));
    next *= 0.25 * t_N;
    next[0] += Quaternion::identity();

    QuatIterState out;
    out.iteration = state.iteration + 1;
    out.truncation = state.truncation;
    out.t_N = t_N;
    if (state.truncation && next.degree() > *state.truncation) {
        out.first_dropped = next[static_cast<std::size_t>(*state.truncation + 1)];
        next.resize(*state.truncation);
    }
    out.b = std::move(next);
    return out;
}

QuatIterState quatfiter_step(const QuatIterState& state, const OmegaFit& fit) {
    check_interval(state.t_N, fit.t_N);
    return quatfiter_step(state, promote_to_quaternions(fit.coeffs), fit.t_N);
}

double coefficient_change_rms(const ChebSeries<Quaternion>& prev, const ChebSeries<Quaternion>& next) {
    const int degree = std::max(prev.degree(), next.degree());
    double sum = 0.0;
    for (int i = 0; i <= degree; ++i) {
        sum += (next.coeff_or_zero(i) - prev.coeff_or_zero(i)).squared_norm();
    }
    return std::sqrt(sum / (4.0 * (degree + 1)));
}

QuatSolution quatfiter_run(const OmegaFit& fit, const IterationOptions& options, const QuatObserver& observer,
                           std::optional<ChebSeries<Quaternion>> initial) {
    if (options.max_iterations < 1) {
        throw std::invalid_argument("quatfiter_run: max_iterations must be >= 1");
    }
    const ChebSeries<Quaternion> omega_quat = promote_to_quaternions(fit.coeffs);
    QuatIterState state = QuatIterState::initial(fit.t_N, options.truncation);
    if (initial) {
        state.b = std::move(*initial);
    }

    QuatSolution sol;
    sol.t_N = fit.t_N;
    for (int l = 0; l < options.max_iterations; ++l) {
        QuatIterState next = quatfiter_step(state, omega_quat, fit.t_N);
        if (!next.b.all_finite()) {
            throw DivergenceError("quatfiter_run: non-finite coefficients at iteration " +
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
    sol.first_dropped = state.first_dropped;
    sol.b = std::move(state.b);
    return sol;
}

Quaternion eval_raw(const QuatSolution& sol, double t) {
    return cheb_eval(sol.b, IntervalMap(sol.t_N).to_tau(t));
}

Quaternion eval_attitude(const QuatSolution& sol, double t) { return quat_normalize(eval_raw(sol, t)); }

double error_bound_estimate(const QuatSolution& sol, double sup_domega) {
    return sol.t_N * sup_domega + sol.first_dropped.norm();
}

} // namespace attrecon

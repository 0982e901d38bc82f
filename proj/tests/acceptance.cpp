// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any hard criterion fails; the timing criterion only warns.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "attrecon/baselines.hpp"
#include "attrecon/gyro_fit.hpp"
#include "attrecon/metrics_harness.hpp"
#include "attrecon/quatfiter.hpp"
#include "attrecon/rodfiter.hpp"
#include "attrecon/scenarios.hpp"
#include "test_support.hpp"

using namespace attrecon;
using attrecon::testing::random_fit;
using attrecon::testing::rk4_reference;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct Outcome {
    bool pass;
    std::string detail;
};

double max_error(const ErrorSeries& s) { return s.max_error(); }

AlgorithmConfig iterative(Algorithm a, TruncationSpec tr, int iterations) {
    AlgorithmConfig c;
    c.algorithm = a;
    c.truncation = tr;
    c.iterations = iterations;
    return c;
}

Outcome criterion_1() {
    const Scenario scenario{ConstantRateSpec{Vec3(1, 3, 2)}};
    const TruncationSpec tr{TruncationSpec::Kind::offset, 10};
    struct Case {
        Algorithm algorithm;
        int n_per;
        int iterations;
    };
    const Case cases[] = {{Algorithm::quatfiter, 2, 9},
                          {Algorithm::quatfiter, 8, 11},
                          {Algorithm::rodfiter, 2, 5},
                          {Algorithm::rodfiter, 8, 7}};
    bool pass = true;
    std::string detail;
    for (const Case& c : cases) {
        SamplingSpec sampling;
        sampling.samples_per_interval = c.n_per;
        const auto sweep = iteration_sweep(scenario, sampling, iterative(c.algorithm, tr, c.iterations), c.iterations);
        const double err = max_error(sweep.back());
        pass = pass && err <= 1e-12;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s N=%d l=%d err=%.2e; ", std::string(to_string(c.algorithm)).c_str(),
                      c.n_per, c.iterations, err);
        detail += buf;
    }
    return {pass, detail};
}

Outcome criterion_2() {
    const Scenario scenario{ConstantRateSpec{Vec3(1, 3, 2)}};
    AlgorithmConfig c;
    c.algorithm = Algorithm::twosample;
    const ErrorSeries s = run_experiment(scenario, SamplingSpec{}, c);
    char buf[96];
    std::snprintf(buf, sizeof buf, "records=%zu max_err=%.2e", s.records.size(), s.max_error());
    return {s.records.size() == 1000 && s.max_error() <= 1e-12, buf};
}

Outcome criterion_3() {
    const Scenario scenario{ConingSpec{10.0 * kDeg, 0.74 * std::numbers::pi}};
    const TruncationSpec tr{};
    bool pass = true;
    std::string detail;
    for (int n_per : {5, 8}) {
        SamplingSpec sampling;
        sampling.samples_per_interval = n_per;
        const auto q = iteration_sweep(scenario, sampling, iterative(Algorithm::quatfiter, tr, 8), 8);
        const auto r = iteration_sweep(scenario, sampling, iterative(Algorithm::rodfiter, tr, 7), 7);
        for (int l = 2; l <= 6; ++l) {
            const double ql1 = max_error(q[static_cast<std::size_t>(l)]);
            const double rl = max_error(r[static_cast<std::size_t>(l - 1)]);
            if (!(ql1 <= rl)) {
                pass = false;
                char buf[96];
                std::snprintf(buf, sizeof buf, "N=%d l=%d Q(l+1)=%.2e > R(l)=%.2e; ", n_per, l, ql1, rl);
                detail += buf;
            }
        }
        const double q8 = max_error(q.back());
        const double r7 = max_error(r.back());
        const double ratio = std::max(q8, r7) / std::min(q8, r7);
        pass = pass && ratio <= 10.0;
        char buf[96];
        std::snprintf(buf, sizeof buf, "N=%d Q8=%.2e R7=%.2e ratio=%.2f; ", n_per, q8, r7, ratio);
        detail += buf;
    }
    return {pass, detail};
}

Outcome criterion_4() {
    const Scenario scenario{ConingSpec{90.0 * kDeg, 1.74 * std::numbers::pi}};
    const SamplingSpec sampling;
    const double q = run_experiment(scenario, sampling, iterative(Algorithm::quatfiter, {}, 8)).final_error();
    AlgorithmConfig c;
    c.algorithm = Algorithm::rk4n;
    const double rk = run_experiment(scenario, sampling, c).final_error();
    c.algorithm = Algorithm::twosample;
    const double ts = run_experiment(scenario, sampling, c).final_error();
    char buf[160];
    std::snprintf(buf, sizeof buf, "quatfiter=%.2e rk4n=%.2e twosample=%.2e quatfiter/rk4n=%.2e", q, rk, ts, q / rk);
    return {q <= 1e-6 * rk && rk >= ts, buf};
}

Outcome criterion_5() {
    std::mt19937_64 rng(20240505);
    double worst = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
        const OmegaFit fit = random_fit(rng, 5, 0.1, 2.0);
        const OmegaSource omega = [&fit](double t) { return eval_omega(fit, t); };
        for (int l = 1; l <= 6; ++l) {
            const QuatSolution sol = quatfiter_run(fit, {l, std::nullopt, 0.0});
            const PicardGrid grid = picard_reference(omega, fit.t_N, l, 10000);
            for (std::size_t k = 0; k < grid.times.size(); k += 7) {
                const Quaternion d = eval_raw(sol, grid.times[k]) - grid.values[k];
                worst = std::max(worst, d.to_vector().cwiseAbs().maxCoeff());
            }
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max component diff=%.2e", worst);
    return {worst <= 1e-10, buf};
}

Outcome criterion_6() {
    std::mt19937_64 rng(77);
    bool pass = true;
    double worst_margin = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const OmegaFit fit = random_fit(rng, 5, 0.05, 2.0);
        const double a_t = fit.t_N * sup_norm_estimate(fit, 4001);
        std::vector<double> times;
        for (int k = 0; k <= 50; ++k) {
            times.push_back(fit.t_N * k / 50.0);
        }
        const std::vector<Quaternion> exact = rk4_reference(fit, times, 4000);
        double fact = 1.0;
        for (int l = 1; l <= 8; ++l) {
            fact *= l;
            const QuatSolution sol = quatfiter_run(fit, {l, std::nullopt, 0.0});
            double err = 0.0;
            for (std::size_t k = 0; k < times.size(); ++k) {
                err = std::max(err, (eval_raw(sol, times[k]) - exact[k]).norm());
            }
            const double bound = std::pow(a_t, l) / fact + 1e-12;
            pass = pass && err <= bound;
            worst_margin = std::max(worst_margin, err / bound);
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max err/bound=%.3f", worst_margin);
    return {pass, buf};
}

Outcome criterion_7() {
    const Scenario scenario{ConingSpec{10.0 * kDeg, 0.74 * std::numbers::pi}};
    SamplingSpec sampling;
    const OmegaFit fit = fit_batch(generate_gyro_batch(scenario, sampling, 0));
    const int n_t = default_truncation(fit.degree());
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> tau(-1.0, 1.0);
    bool pass = true;
    double worst = 0.0;
    QuatIterState state = QuatIterState::initial(fit.t_N, n_t);
    for (int l = 1; l <= 7; ++l) {
        QuatIterState open = state;
        open.truncation = std::nullopt;
        const QuatIterState full = quatfiter_step(open, fit);
        state = quatfiter_step(state, fit);
        const double bound = state.first_dropped.norm();
        // Evaluation is linear, so the eval difference is the eval of the coefficient
        // difference; evaluating that directly keeps O(1) rounding out of a ~1e-21 quantity.
        ChebSeries<Quaternion> dropped = full.b;
        for (int i = 0; i <= state.b.degree(); ++i) {
            pass = pass && (full.b[i] - state.b[i]).norm() == 0.0;
            dropped[i] = Quaternion::Zero();
        }
        for (int k = 0; k < 100; ++k) {
            const double diff = cheb_eval(dropped, tau(rng)).norm();
            pass = pass && diff <= bound;
            if (bound > 0.0) {
                worst = std::max(worst, diff / bound);
            }
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max diff/|b_{nT+1}|=%.6f", worst);
    return {pass, buf};
}

Outcome criterion_8() {
    const Vec3 u = Vec3(1, -2, 2).normalized();
    const double t_N = 0.5;
    const int n_per = 16;
    GyroBatch batch;
    batch.t_N = t_N;
    batch.mode = SampleMode::increment;
    for (int k = 1; k <= n_per; ++k) {
        const double t0 = t_N * (k - 1) / n_per;
        const double t1 = t_N * k / n_per;
        batch.times.push_back(t1);
        batch.samples.push_back(u * ((t1 - t0) + std::cos(t0) - std::cos(t1)));
    }
    const OmegaFit fit = fit_batch(batch);
    const QuatSolution sol = quatfiter_run(fit, {60, std::nullopt, 1e-17});
    double worst = 0.0;
    for (int k = 0; k <= 100; ++k) {
        const double t = t_N * k / 100.0;
        const Quaternion exact = rotvec_to_quat(u * (t + 1.0 - std::cos(t)));
        worst = std::max(worst, principal_angle_error(exact, eval_attitude(sol, t)));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max err=%.2e after %d iterations", worst, sol.iterations_run);
    return {worst <= 1e-12, buf};
}

Outcome criterion_9() {
    const Scenario scenario{ConingSpec{10.0 * kDeg, 0.74 * std::numbers::pi}};
    const MeasurementStream stream = generate_measurements(scenario, 100.0, 10.0, SampleMode::increment);
    const TimingReport q = time_algorithm(stream, scenario, iterative(Algorithm::quatfiter, {}, 7), 8, 50);
    const TimingReport r = time_algorithm(stream, scenario, iterative(Algorithm::rodfiter, {}, 7), 8, 50);
    const double ratio = r.mean_wall_s / q.mean_wall_s;
    char buf[128];
    std::snprintf(buf, sizeof buf, "quatfiter=%.3es rodfiter=%.3es ratio=%.2f", q.mean_wall_s, r.mean_wall_s, ratio);
    return {ratio >= 1.5, buf};
}

Outcome criterion_10() {
    const Scenario scenarios[] = {Scenario{ConingSpec{10.0 * kDeg, 0.74 * std::numbers::pi}},
                                  Scenario{ConingSpec{90.0 * kDeg, 1.74 * std::numbers::pi}},
                                  Scenario{ConstantRateSpec{Vec3(1, 3, 2)}}};
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> time(0.0, 10.0);
    const double h = 1e-5;
    double worst = 0.0;
    for (const Scenario& s : scenarios) {
        for (int k = 0; k < 1000; ++k) {
            const double t = time(rng);
            const Quaternion fd = (s.truth(t + h) - s.truth(t - h)) * (0.5 / h);
            const Quaternion rhs = quat_mul_pure(s.truth(t), s.omega(t)) * 0.5;
            worst = std::max(worst, (fd - rhs).norm());
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max residual=%.2e", worst);
    return {worst <= 1e-7, buf};
}

} // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        std::function<Outcome()> run;
        bool soft;
    };
    const std::vector<Entry> entries = {
        {1, "constant-rate iteration counts", criterion_1, false},
        {2, "two-sample exactness", criterion_2, false},
        {3, "coning interleaving", criterion_3, false},
        {4, "severe-coning ordering", criterion_4, false},
        {5, "Picard-oracle equivalence", criterion_5, false},
        {6, "convergence bound", criterion_6, false},
        {7, "truncation bound", criterion_7, false},
        {8, "fixed-axis closed form", criterion_8, false},
        {9, "timing ratio", criterion_9, true},
        {10, "kinematic self-consistency", criterion_10, false},
    };
    int failures = 0;
    for (const Entry& e : entries) {
        Outcome o;
        try {
            o = e.run();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        const char* status = o.pass ? "PASS" : (e.soft ? "WARN" : "FAIL");
        std::printf("%s criterion %d (%s): %s\n", status, e.id, e.name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass && !e.soft) {
            ++failures;
        }
    }
    std::printf("%d hard criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}

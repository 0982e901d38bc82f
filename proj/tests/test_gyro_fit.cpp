#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "attrecon/gyro_fit.hpp"
#include "attrecon/scenarios.hpp"

using namespace attrecon;

namespace {

GyroBatch rate_batch(double t_N, int n, const std::function<Vec3(double)>& w) {
    GyroBatch b;
    b.t_N = t_N;
    b.mode = SampleMode::rate;
    for (int k = 1; k <= n; ++k) {
        const double t = t_N * k / n;
        b.times.push_back(t);
        b.samples.push_back(w(t));
    }
    return b;
}

// Increments of a Chebyshev-series rate, integrated independently by
// high-order Gauss-Legendre quadrature on each sub-interval.
GyroBatch increment_batch_from(const OmegaFit& truth, int n) {
    static const double x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                0.9061798459386640};
    static const double w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                                0.2369268850561891};
    GyroBatch b;
    b.t_N = truth.t_N;
    b.mode = SampleMode::increment;
    for (int k = 1; k <= n; ++k) {
        const double t0 = truth.t_N * (k - 1) / n;
        const double t1 = truth.t_N * k / n;
        Vec3 sum = Vec3::Zero();
        for (int q = 0; q < 5; ++q) {
            sum += w[q] * eval_omega(truth, 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * x[q]);
        }
        b.times.push_back(t1);
        b.samples.push_back(0.5 * (t1 - t0) * sum);
    }
    return b;
}

double coeff_distance(const ChebSeries<Vec3>& a, const ChebSeries<Vec3>& b) {
    double d = 0.0;
    for (int i = 0; i <= std::max(a.degree(), b.degree()); ++i) {
        d = std::max(d, (a.coeff_or_zero(i) - b.coeff_or_zero(i)).norm());
    }
    return d;
}

const ConingSpec kConing{10.0 * std::numbers::pi / 180.0, 0.74 * std::numbers::pi};

} // namespace

TEST_CASE("fit_rates: constant samples give a constant fit") {
    const Vec3 w(1, 3, 2);
    const GyroBatch b = rate_batch(0.08, 8, [&](double) { return w; });
    for (int n = 0; n <= 7; ++n) {
        const OmegaFit fit = fit_rates(b, n);
        CHECK(fit.degree() == n);
        CHECK((fit.coeffs[0] - w).norm() < 1e-13);
        for (int i = 1; i <= n; ++i) {
            CHECK(fit.coeffs[static_cast<std::size_t>(i)].norm() < 1e-13);
        }
    }
}

TEST_CASE("fit_rates: omega(t) = t on t_N = 2 is F_0 + F_1") {
    const GyroBatch b = rate_batch(2.0, 5, [](double t) { return Vec3(t, t, t); });
    const OmegaFit fit = fit_rates(b, 3);
    CHECK((fit.coeffs[0] - Vec3(1, 1, 1)).norm() < 1e-13);
    CHECK((fit.coeffs[1] - Vec3(1, 1, 1)).norm() < 1e-13);
    CHECK(fit.coeffs[2].norm() < 1e-13);
    CHECK(fit.coeffs[3].norm() < 1e-13);
}

TEST_CASE("fit_rates: square coning system interpolates") {
    SamplingSpec s;
    s.mode = SampleMode::rate;
    const GyroBatch b = generate_gyro_batch(Scenario(kConing), s, 3);
    const OmegaFit fit = fit_rates(b, 7);
    for (int k = 0; k < b.size(); ++k) {
        CHECK((eval_omega(fit, b.times[static_cast<std::size_t>(k)]) - b.samples[static_cast<std::size_t>(k)]).norm() <
              1e-12);
    }
}

TEST_CASE("fit_increments: constant and linear rates are recovered") {
    const double t_N = 0.08;
    const Vec3 w(1, 3, 2);
    GyroBatch c;
    c.t_N = t_N;
    for (int k = 1; k <= 8; ++k) {
        c.times.push_back(t_N * k / 8);
        c.samples.push_back(w * (t_N / 8));
    }
    const OmegaFit fc = fit_increments(c, 7);
    CHECK((fc.coeffs[0] - w).norm() < 1e-13);
    for (int i = 1; i <= 7; ++i) {
        CHECK(fc.coeffs[static_cast<std::size_t>(i)].norm() < 1e-13);
    }

    // omega(t) = a + b t, exact increments a h + b (t1^2 - t0^2) / 2.
    const Vec3 a(0.5, -1, 2);
    const Vec3 slope(3, 0.25, -4);
    GyroBatch l;
    l.t_N = t_N;
    for (int k = 1; k <= 8; ++k) {
        const double t0 = t_N * (k - 1) / 8;
        const double t1 = t_N * k / 8;
        l.times.push_back(t1);
        l.samples.push_back(a * (t1 - t0) + slope * (0.5 * (t1 * t1 - t0 * t0)));
    }
    const OmegaFit fl = fit_increments(l, 1);
    // a + b t = (a + b t_N / 2) F_0 + (b t_N / 2) F_1
    CHECK((fl.coeffs[0] - (a + slope * (t_N / 2))).norm() < 1e-13);
    CHECK((fl.coeffs[1] - slope * (t_N / 2)).norm() < 1e-13);
}

TEST_CASE("fit_increments: square coning system reproduces increments") {
    const GyroBatch b = generate_gyro_batch(Scenario(kConing), SamplingSpec{}, 5);
    const OmegaFit fit = fit_increments(b, 7);
    const IntervalMap map(b.t_N);
    const auto integral = cheb_integrate(fit.coeffs);
    double prev_t = 0.0;
    for (int k = 0; k < b.size(); ++k) {
        const double t = b.times[static_cast<std::size_t>(k)];
        const Vec3 predicted =
            0.5 * b.t_N * (cheb_eval(integral, map.to_tau(t)) - cheb_eval(integral, map.to_tau(prev_t)));
        CHECK((predicted - b.samples[static_cast<std::size_t>(k)]).norm() < 1e-14);
        prev_t = t;
    }
}

TEST_CASE("polynomial truth is recovered by both fit paths") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> d(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + trial % 6;
        OmegaFit truth;
        truth.t_N = 0.02 + 0.01 * trial;
        truth.coeffs = ChebSeries<Vec3>::zeros(n);
        for (int i = 0; i <= n; ++i) {
            truth.coeffs[static_cast<std::size_t>(i)] = Vec3(d(rng), d(rng), d(rng));
        }
        const int samples = n + 1 + trial % 3;
        const OmegaFit from_rates =
            fit_rates(rate_batch(truth.t_N, samples, [&](double t) { return eval_omega(truth, t); }), n);
        const OmegaFit from_incs = fit_increments(increment_batch_from(truth, samples), n);
        CHECK(coeff_distance(from_rates.coeffs, truth.coeffs) < 1e-12);
        CHECK(coeff_distance(from_incs.coeffs, truth.coeffs) < 1e-10);
        // Increments synthesized from the rate fit return the same coefficients.
        CHECK(coeff_distance(fit_increments(increment_batch_from(from_rates, samples), n).coeffs,
                             from_rates.coeffs) < 1e-10);
    }
}

TEST_CASE("fit degree and batch validation errors") {
    const GyroBatch b = rate_batch(0.08, 4, [](double t) { return Vec3(t, 0, 0); });
    CHECK_THROWS_AS(fit_rates(b, 4), std::invalid_argument);
    CHECK_THROWS_AS(fit_rates(b, -1), std::invalid_argument);
    GyroBatch inc = b;
    inc.mode = SampleMode::increment;
    CHECK_THROWS_AS(fit_increments(inc, 4), std::invalid_argument);

    GyroBatch empty;
    empty.t_N = 1.0;
    CHECK_THROWS_AS(fit_batch(empty), std::invalid_argument);

    GyroBatch unsorted = b;
    std::swap(unsorted.times[0], unsorted.times[1]);
    CHECK_THROWS_AS(fit_rates(unsorted, 1), std::invalid_argument);

    GyroBatch outside = b;
    outside.times.back() = 0.09;
    CHECK_THROWS_AS(fit_rates(outside, 1), std::invalid_argument);

    GyroBatch short_partition = inc;
    short_partition.t_N = 0.1;
    CHECK_THROWS_AS(fit_increments(short_partition, 1), std::invalid_argument);

    GyroBatch nan = b;
    nan.samples[1].x() = NAN;
    CHECK_THROWS_AS(fit_rates(nan, 1), std::invalid_argument);
}

TEST_CASE("rank-deficient design is rejected") {
    GyroBatch b;
    b.t_N = 1.0;
    b.mode = SampleMode::rate;
    b.times = {0.5, std::nextafter(0.5, 1.0)};
    b.samples = {Vec3(1, 0, 0), Vec3(1, 0, 0)};
    CHECK_THROWS_AS(fit_rates(b, 1), std::domain_error);
}

TEST_CASE("fit_batch defaults and dispatch") {
    const GyroBatch incs = generate_gyro_batch(Scenario(kConing), SamplingSpec{}, 0);
    const OmegaFit fit = fit_batch(incs);
    CHECK(fit.degree() == 7);
    CHECK(fit.t_N == doctest::Approx(0.08));
    CHECK(fit_batch(incs, 3).degree() == 3);
    CHECK(coeff_distance(fit.coeffs, fit_increments(incs, 7).coeffs) == 0.0);
}

TEST_CASE("eval_omega") {
    OmegaFit c;
    c.t_N = 0.5;
    c.coeffs = ChebSeries<Vec3>::constant(Vec3(1, 3, 2));
    CHECK((eval_omega(c, 0.123) - Vec3(1, 3, 2)).norm() == 0.0);
    OmegaFit lin;
    lin.t_N = 0.5;
    lin.coeffs = ChebSeries<Vec3>({Vec3(1, 0, 0), Vec3(2, 0, 0)});
    CHECK(eval_omega(lin, 0.0).x() == doctest::Approx(cheb_eval(lin.coeffs, -1.0).x()));
    CHECK(eval_omega(lin, 0.0).x() == doctest::Approx(-1.0));
    CHECK_THROWS_AS(eval_omega(lin, 0.6), std::out_of_range);
    CHECK_THROWS_AS(eval_omega(lin, -0.1), std::out_of_range);
}

TEST_CASE("sup_norm_estimate") {
    OmegaFit lin;
    lin.t_N = 1.0;
    lin.coeffs = ChebSeries<Vec3>({Vec3(1, 0, 0), Vec3(2, 0, 0)});
    CHECK(sup_norm_estimate(lin) == doctest::Approx(3.0));
    const double est = sup_norm_estimate(fit_batch(generate_gyro_batch(Scenario(kConing), SamplingSpec{}, 0)));
    // |omega| is constant on coning motion.
    CHECK(est == doctest::Approx(2.0 * kConing.Omega * std::sin(kConing.alpha / 2)).epsilon(1e-9));
}

TEST_CASE("sample mode text") {
    CHECK(to_string(SampleMode::rate) == "rate");
    CHECK(parse_sample_mode("increment") == SampleMode::increment);
    CHECK_THROWS_AS(parse_sample_mode("bogus"), std::invalid_argument);
}

#include "attrecon/metrics_harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>

#include "attrecon/baselines.hpp"
#include "attrecon/gyro_fit.hpp"
#include "attrecon/quatfiter.hpp"
#include "attrecon/rodfiter.hpp"

namespace attrecon {

std::string_view to_string(Algorithm algorithm) {
    switch (algorithm) {
    case Algorithm::quatfiter:
        return "quatfiter";
    case Algorithm::rodfiter:
        return "rodfiter";
    case Algorithm::twosample:
        return "twosample";
    case Algorithm::rk4n:
        return "rk4n";
    case Algorithm::cg4n:
        return "cg4n";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view text) {
    for (Algorithm a : {Algorithm::quatfiter, Algorithm::rodfiter, Algorithm::twosample, Algorithm::rk4n,
                        Algorithm::cg4n}) {
        if (text == to_string(a)) {
            return a;
        }
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(text) +
                                "' (expected quatfiter|rodfiter|twosample|rk4n|cg4n)");
}

bool is_functional_iteration(Algorithm algorithm) {
    return algorithm == Algorithm::quatfiter || algorithm == Algorithm::rodfiter;
}

std::optional<int> TruncationSpec::resolve(int fit_degree) const {
    switch (kind) {
    case Kind::offset:
        return fit_degree + value;
    case Kind::absolute:
        return value;
    case Kind::none:
        return std::nullopt;
    }
    return std::nullopt;
}

std::string TruncationSpec::to_string() const {
    switch (kind) {
    case Kind::offset:
        return "n+" + std::to_string(value);
    case Kind::absolute:
        return std::to_string(value);
    case Kind::none:
        return "none";
    }
    return {};
}

namespace {

int parse_int(std::string_view text, std::string_view what) {
    int out = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc() || ptr != end) {
        throw std::invalid_argument("invalid " + std::string(what) + " '" + std::string(text) + "'");
    }
    return out;
}

} // namespace

TruncationSpec TruncationSpec::parse(std::string_view text) {
    if (text == "none" || text == "inf") {
        return {Kind::none, 0};
    }
    if (text.size() > 2 && text.substr(0, 2) == "n+") {
        const int offset = parse_int(text.substr(2), "truncation offset");
        if (offset < 0) {
            throw std::invalid_argument("truncation offset must be non-negative");
        }
        return {Kind::offset, offset};
    }
    const int degree = parse_int(text, "truncation degree");
    if (degree < 0) {
        throw std::invalid_argument("truncation degree must be non-negative");
    }
    return {Kind::absolute, degree};
}

double principal_angle_error(const Quaternion& q_true, const Quaternion& q_est) {
    require_attitude(q_true, "principal_angle_error(q_true)");
    require_attitude(q_est, "principal_angle_error(q_est)");
    return 2.0 * quat_mul(q_true.conjugate(), q_est).eta.norm();
}

double ErrorSeries::max_error() const {
    double m = 0.0;
    for (const auto& r : records) {
        m = std::max(m, r.principal_angle_error);
    }
    return m;
}

double ErrorSeries::final_error() const { return records.empty() ? 0.0 : records.back().principal_angle_error; }

namespace {

IterationOptions iteration_options(const AlgorithmConfig& config, int fit_degree) {
    return {config.iterations, config.truncation.resolve(fit_degree), config.stop_rms};
}

OmegaSource analytic_rate(const Scenario& scenario) {
    return [&scenario](double t) { return scenario.omega(t); };
}

// One update interval of an iterative solver: attitudes (interval-relative) and
// raw norm discrepancies at every sample time.
struct IntervalResult {
    std::vector<Quaternion> attitudes;
    std::vector<double> norm_discrepancy;
    int iterations = 0;
};

IntervalResult solve_interval(const GyroBatch& batch, const AlgorithmConfig& config) {
    const OmegaFit fit = fit_batch(batch, config.fit_degree);
    const IterationOptions opts = iteration_options(config, fit.degree());
    IntervalResult out;
    if (config.algorithm == Algorithm::quatfiter) {
        const QuatSolution sol = quatfiter_run(fit, opts);
        out.iterations = sol.iterations_run;
        for (double t : batch.times) {
            const Quaternion raw = eval_raw(sol, t);
            out.attitudes.push_back(quat_normalize(raw));
            out.norm_discrepancy.push_back(std::abs(raw.norm() - 1.0));
        }
    } else {
        const RodSolution sol = rodfiter_run(fit, opts);
        out.iterations = sol.iterations_run;
        for (double t : batch.times) {
            out.attitudes.push_back(eval_attitude(sol, t));
            out.norm_discrepancy.push_back(0.0);
        }
    }
    return out;
}

ErrorSeries reconstruct_iterative(const MeasurementStream& stream, const Scenario& scenario,
                                  const AlgorithmConfig& config, int n_per) {
    if (n_per < 1 || stream.samples.size() % static_cast<std::size_t>(n_per) != 0) {
        throw std::invalid_argument("reconstruct: stream length is not a multiple of the samples per interval");
    }
    const int intervals = static_cast<int>(stream.samples.size()) / n_per;
    ErrorSeries series;
    series.algorithm = std::string(to_string(config.algorithm));
    series.records.reserve(stream.samples.size());
    Quaternion accum = scenario.truth(0.0);
    for (int k = 0; k < intervals; ++k) {
        IntervalResult interval;
        try {
            interval = solve_interval(batch_from_stream(stream, n_per, k), config);
        } catch (const std::exception& e) {
            throw ExperimentError("update interval " + std::to_string(k) + ": " + e.what(), k);
        }
        for (int j = 0; j < n_per; ++j) {
            const std::size_t idx = static_cast<std::size_t>(k * n_per + j);
            const double t = stream.samples[idx].t;
            const Quaternion total = quat_normalize(quat_mul(accum, interval.attitudes[static_cast<std::size_t>(j)]));
            series.records.push_back({t, principal_angle_error(scenario.truth(t), total),
                                      interval.norm_discrepancy[static_cast<std::size_t>(j)], interval.iterations});
        }
        accum = quat_normalize(quat_mul(accum, interval.attitudes.back()));
    }
    return series;
}

ErrorSeries reconstruct_baseline(const MeasurementStream& stream, const Scenario& scenario,
                                 const AlgorithmConfig& config) {
    if (stream.samples.size() % 2 != 0) {
        throw std::invalid_argument("reconstruct: baselines need an even number of samples");
    }
    if (config.algorithm == Algorithm::twosample && stream.mode != SampleMode::increment) {
        throw std::invalid_argument("reconstruct: the two-sample algorithm needs angular increments");
    }
    const double dt = 1.0 / stream.rate_hz;
    const StepContext ctx{analytic_rate(scenario), 2.0 * dt, config.substeps};
    auto integrate = [&](double t0, double t1, const Quaternion& q0) {
        return config.algorithm == Algorithm::rk4n ? rk4n_integrate(ctx, t0, t1, q0) : cg4n_integrate(ctx, t0, t1, q0);
    };

    ErrorSeries series;
    series.algorithm = std::string(to_string(config.algorithm));
    series.records.reserve(stream.samples.size());
    Quaternion accum = scenario.truth(0.0);
    auto record = [&](double t, const Quaternion& q) {
        series.records.push_back({t, principal_angle_error(scenario.truth(t), q), std::abs(q.norm() - 1.0), 0});
    };
    for (std::size_t k = 0; k + 1 < stream.samples.size(); k += 2) {
        const Measurement& first = stream.samples[k];
        const Measurement& second = stream.samples[k + 1];
        const double t_start = static_cast<double>(k) * dt;
        // Between updates the estimate is advanced by a partial step from the last update.
        Quaternion mid;
        Quaternion next;
        if (config.algorithm == Algorithm::twosample) {
            mid = quat_normalize(quat_mul(accum, rotvec_to_quat(first.value)));
            next = quat_normalize(quat_mul(accum, two_sample_update(first.value, second.value)));
        } else {
            mid = integrate(t_start, first.t, accum);
            next = integrate(t_start, second.t, accum);
        }
        record(first.t, mid);
        record(second.t, next);
        accum = next;
    }
    return series;
}

} // namespace

ErrorSeries reconstruct_stream(const MeasurementStream& stream, const Scenario& scenario, const AlgorithmConfig& config,
                               int samples_per_interval) {
    if (stream.samples.empty()) {
        throw std::invalid_argument("reconstruct: empty measurement stream");
    }
    return is_functional_iteration(config.algorithm)
               ? reconstruct_iterative(stream, scenario, config, samples_per_interval)
               : reconstruct_baseline(stream, scenario, config);
}

ErrorSeries run_experiment(const Scenario& scenario, const SamplingSpec& sampling, const AlgorithmConfig& config) {
    sampling.validate();
    const MeasurementStream stream =
        generate_measurements(scenario, sampling.rate_hz, sampling.duration_s, sampling.mode);
    return reconstruct_stream(stream, scenario, config, sampling.samples_per_interval);
}

std::vector<ErrorSeries> iteration_sweep(const Scenario& scenario, const SamplingSpec& sampling,
                                         const AlgorithmConfig& config, int max_iterations, int interval_index) {
    if (!is_functional_iteration(config.algorithm)) {
        throw std::invalid_argument("iteration_sweep: only quatfiter and rodfiter iterate");
    }
    const GyroBatch batch = generate_gyro_batch(scenario, sampling, interval_index);
    const OmegaFit fit = fit_batch(batch, config.fit_degree);
    IterationOptions opts = iteration_options(config, fit.degree());
    opts.max_iterations = max_iterations;
    opts.stop_rms = 0.0;

    const double t0 = interval_index * sampling.interval_length();
    const IntervalMap map(fit.t_N);
    std::vector<ErrorSeries> out;
    auto add = [&](int l, auto attitude_and_norm) {
        ErrorSeries s;
        s.algorithm = std::string(to_string(config.algorithm));
        for (std::size_t j = 0; j < batch.times.size(); ++j) {
            const double t_rel = batch.times[j];
            const auto [q, disc] = attitude_and_norm(map.to_tau(t_rel));
            s.records.push_back({t0 + t_rel, principal_angle_error(scenario.relative_truth(t0, t0 + t_rel), q), disc, l});
        }
        out.push_back(std::move(s));
    };
    if (config.algorithm == Algorithm::quatfiter) {
        quatfiter_run(fit, opts, [&](const QuatIterState& st) {
            add(st.iteration, [&](double tau) {
                const Quaternion raw = cheb_eval(st.b, tau);
                return std::pair{quat_normalize(raw), std::abs(raw.norm() - 1.0)};
            });
        });
    } else {
        rodfiter_run(fit, opts, [&](const RodIterState& st) {
            add(st.iteration, [&](double tau) { return std::pair{rodrigues_to_quat(cheb_eval(st.b, tau)), 0.0}; });
        });
    }
    return out;
}

TimingReport time_algorithm(const MeasurementStream& stream, const Scenario& scenario, const AlgorithmConfig& config,
                            int samples_per_interval, int repetitions) {
    if (repetitions < 1) {
        throw std::invalid_argument("time_algorithm: repetitions must be >= 1");
    }
    using clock = std::chrono::steady_clock;
    TimingReport report;
    report.algorithm = std::string(to_string(config.algorithm));
    report.repetitions = repetitions;

    double sink = 0.0;
    clock::duration total{};
    if (is_functional_iteration(config.algorithm)) {
        const int intervals = static_cast<int>(stream.samples.size()) / samples_per_interval;
        std::vector<OmegaFit> fits;
        std::vector<GyroBatch> batches;
        for (int k = 0; k < intervals; ++k) {
            batches.push_back(batch_from_stream(stream, samples_per_interval, k));
            fits.push_back(fit_batch(batches.back(), config.fit_degree));
        }
        const IterationOptions opts = iteration_options(config, fits.front().degree());
        report.samples_per_interval = samples_per_interval;
        report.fit_degree = fits.front().degree();
        report.truncation = opts.truncation;
        report.iterations = config.iterations;
        for (int r = 0; r < repetitions; ++r) {
            const auto start = clock::now();
            for (int k = 0; k < intervals; ++k) {
                const auto& fit = fits[static_cast<std::size_t>(k)];
                const auto& times = batches[static_cast<std::size_t>(k)].times;
                if (config.algorithm == Algorithm::quatfiter) {
                    const QuatSolution sol = quatfiter_run(fit, opts);
                    for (double t : times) {
                        sink += eval_attitude(sol, t).s;
                    }
                } else {
                    const RodSolution sol = rodfiter_run(fit, opts);
                    for (double t : times) {
                        sink += eval_attitude(sol, t).s;
                    }
                }
            }
            total += clock::now() - start;
        }
    } else {
        report.samples_per_interval = 2;
        const double dt = 1.0 / stream.rate_hz;
        const StepContext ctx{analytic_rate(scenario), 2.0 * dt, config.substeps};
        for (int r = 0; r < repetitions; ++r) {
            const auto start = clock::now();
            Quaternion accum = scenario.truth(0.0);
            for (std::size_t k = 0; k + 1 < stream.samples.size(); k += 2) {
                const double t0 = static_cast<double>(k) * dt;
                switch (config.algorithm) {
                case Algorithm::twosample:
                    accum = quat_normalize(
                        quat_mul(accum, two_sample_update(stream.samples[k].value, stream.samples[k + 1].value)));
                    break;
                case Algorithm::rk4n:
                    accum = rk4n_integrate(ctx, t0, stream.samples[k + 1].t, accum);
                    break;
                default:
                    accum = cg4n_integrate(ctx, t0, stream.samples[k + 1].t, accum);
                    break;
                }
            }
            total += clock::now() - start;
            sink += accum.s;
        }
    }
    // Keeps the timed work observable.
    volatile double guard = sink;
    (void)guard;
    report.mean_wall_s = std::chrono::duration<double>(total).count() / repetitions;
    return report;
}

SuiteResult compare_algorithms(const SuiteConfig& suite) {
    suite.sampling.validate();
    SuiteResult result;
    result.stream = generate_measurements(suite.scenario, suite.sampling.rate_hz, suite.sampling.duration_s,
                                          suite.sampling.mode);
    const int n_per = suite.sampling.samples_per_interval;
    for (const auto& config : suite.algorithms) {
        result.series.push_back(reconstruct_stream(result.stream, suite.scenario, config, n_per));
        if (suite.sweep_iterations > 0 && is_functional_iteration(config.algorithm)) {
            auto sweeps = iteration_sweep(suite.scenario, suite.sampling, config, suite.sweep_iterations);
            for (auto& s : sweeps) {
                result.sweeps.push_back(std::move(s));
            }
        }
    }
    // Sequential after all accuracy runs so timing is not skewed by other work.
    if (suite.timing) {
        for (const auto& config : suite.algorithms) {
            result.timings.push_back(time_algorithm(result.stream, suite.scenario, config, n_per, suite.repetitions));
        }
    }
    return result;
}

} // namespace attrecon

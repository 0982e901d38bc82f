#pragma once

// Error metric, interval chaining over long runs, per-iteration sweeps and
// timing for the reconstruction algorithms.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "attrecon/quat_algebra.hpp"
#include "attrecon/scenarios.hpp"

namespace attrecon {

enum class Algorithm { quatfiter, rodfiter, twosample, rk4n, cg4n };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view text);
bool is_functional_iteration(Algorithm algorithm);

/// Truncation degree either absolute ("12"), relative to the fit degree ("n+2") or off ("none").
struct TruncationSpec {
    enum class Kind { offset, absolute, none };
    Kind kind = Kind::offset;
    int value = 2;

    std::optional<int> resolve(int fit_degree) const;
    std::string to_string() const;
    static TruncationSpec parse(std::string_view text);
};

struct AlgorithmConfig {
    Algorithm algorithm = Algorithm::quatfiter;
    std::optional<int> fit_degree;  ///< default N - 1
    TruncationSpec truncation;
    int iterations = 7;
    double stop_rms = 0.0;
    int substeps = 1;  ///< RK4n / CG4n steps per update interval
};

/// 2 |vec(q_true* ∘ q_est)|. Both inputs must be unit to 1e-9.
double principal_angle_error(const Quaternion& q_true, const Quaternion& q_est);

struct ErrorRecord {
    double t = 0.0;
    double principal_angle_error = 0.0;
    double norm_discrepancy = 0.0;
    int iteration = 0;
};

struct ErrorSeries {
    std::string algorithm;
    std::vector<ErrorRecord> records;

    double max_error() const;
    double final_error() const;
};

/// Carries the failing update interval of a chained run.
class ExperimentError : public std::runtime_error {
public:
    ExperimentError(const std::string& what, int interval_index)
        : std::runtime_error(what), interval_index_(interval_index) {}
    int interval_index() const { return interval_index_; }

private:
    int interval_index_;
};

/**
 * Reconstructs the whole stream and compares with the scenario truth at every
 * sample time. Functional-iteration algorithms use updates of
 * `samples_per_interval` samples; the baselines update every two samples and
 * take the analytic scenario rate where they need one. The accumulated
 * attitude is q_accum ∘ q_interval, re-normalized after every update.
 */
ErrorSeries reconstruct_stream(const MeasurementStream& stream, const Scenario& scenario, const AlgorithmConfig& config,
                               int samples_per_interval);

/// Synthesizes the measurements for `sampling`, then reconstruct_stream().
ErrorSeries run_experiment(const Scenario& scenario, const SamplingSpec& sampling, const AlgorithmConfig& config);

/**
 * Errors inside one update interval after each iteration 1..max_iterations
 * (functional-iteration algorithms only). Element l-1 holds iteration l.
 */
std::vector<ErrorSeries> iteration_sweep(const Scenario& scenario, const SamplingSpec& sampling,
                                         const AlgorithmConfig& config, int max_iterations, int interval_index = 0);

struct TimingReport {
    std::string algorithm;
    int samples_per_interval = 0;
    int fit_degree = 0;
    std::optional<int> truncation;
    int iterations = 0;
    int repetitions = 0;
    double mean_wall_s = 0.0;
};

/// Mean wall time of the update loop over `repetitions` passes. Measurement
/// synthesis and fitting are done beforehand and excluded.
TimingReport time_algorithm(const MeasurementStream& stream, const Scenario& scenario, const AlgorithmConfig& config,
                            int samples_per_interval, int repetitions);

struct SuiteConfig {
    Scenario scenario{ConingSpec{}};
    SamplingSpec sampling;
    std::vector<AlgorithmConfig> algorithms;
    int repetitions = 50;
    bool timing = true;
    int sweep_iterations = 0;  ///< > 0 adds first-interval sweeps for the iterative algorithms
};

struct SuiteResult {
    MeasurementStream stream;
    std::vector<ErrorSeries> series;
    std::vector<TimingReport> timings;
    std::vector<ErrorSeries> sweeps;
};

/// Runs every configured algorithm on one shared measurement stream.
SuiteResult compare_algorithms(const SuiteConfig& suite);

} // namespace attrecon

#pragma once

// CSV files and flat key/value configs used by the command-line tool.
//
// Measurement file:   optional "# key=value" scenario lines, then
//                     t_s,wx,wy,wz,mode
// Error file:         t_s,algorithm,iteration,principal_angle_error_rad,norm_discrepancy
// Timing file:        algorithm,samples_per_interval,fit_degree,truncation,iterations,repetitions,mean_wall_s
// Config file:        "key = value" lines, '#' comments; unknown keys are errors.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "attrecon/metrics_harness.hpp"
#include "attrecon/scenarios.hpp"

namespace attrecon {

using KeyValues = std::map<std::string, std::string>;

/// Scenario description as key/value pairs (scenario, alpha_deg, omega_freq, omega).
KeyValues scenario_metadata(const Scenario& scenario);

/// Rebuilds a scenario from scenario_metadata() keys; nullopt when "scenario" is absent.
std::optional<Scenario> scenario_from_metadata(const KeyValues& meta);

void write_measurements(std::ostream& out, const MeasurementStream& stream, const KeyValues& metadata = {});

struct MeasurementFile {
    MeasurementStream stream;
    KeyValues metadata;
};

/// Throws std::runtime_error on a malformed file (header, column count, mixed modes, uneven sample times).
MeasurementFile read_measurements(std::istream& in);

void write_errors(std::ostream& out, const std::vector<ErrorSeries>& series);
std::vector<ErrorRecord> read_error_records(std::istream& in);

void write_timings(std::ostream& out, const std::vector<TimingReport>& reports);

/// Parses "key = value" lines. Throws std::runtime_error on malformed or duplicate keys.
KeyValues parse_key_values(std::istream& in);

/**
 * Suite from config keys:
 *   scenario, alpha_deg, omega_freq, omega, rate_hz, duration_s, mode,
 *   samples_per_interval, algorithms (comma list), fit_degree, truncation,
 *   iterations, stop_rms, substeps, reps, timing, sweep_iterations,
 *   and per-algorithm overrides <algorithm>.iterations / .truncation / .stop_rms.
 * Throws std::invalid_argument on unknown keys or bad values.
 */
SuiteConfig suite_from_config(const KeyValues& config);

Vec3 parse_vec3(const std::string& text);
double parse_double(const std::string& text, const std::string& what);
int parse_integer(const std::string& text, const std::string& what);

} // namespace attrecon

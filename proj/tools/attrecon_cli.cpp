// attrecon: simulate gyro data, reconstruct attitude, compare and time algorithms.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "attrecon/io.hpp"
#include "attrecon/metrics_harness.hpp"
#include "attrecon/scenarios.hpp"

namespace {

using namespace attrecon;

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    return out;
}

void print_summary(const std::vector<ErrorSeries>& series) {
    for (const auto& s : series) {
        std::cout << s.algorithm << ": records=" << s.records.size() << " max_error_rad=" << s.max_error()
                  << " final_error_rad=" << s.final_error() << "\n";
    }
}

void print_timings(const std::vector<TimingReport>& timings) {
    for (const auto& t : timings) {
        std::cout << t.algorithm << ": mean_wall_s=" << t.mean_wall_s << " (reps=" << t.repetitions << ")\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Attitude reconstruction from gyroscope measurements"};
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Write exact gyro measurements for a test motion");
    std::string sim_scenario = "coning";
    double alpha_deg = 10.0;
    double omega_freq = 0.74 * std::numbers::pi;
    std::string omega_vec = "1,3,2";
    double rate_hz = 100.0;
    double duration_s = 10.0;
    std::string mode = "increment";
    std::string sim_out;
    simulate->add_option("--scenario", sim_scenario, "coning|constant")
        ->check(CLI::IsMember({"coning", "constant"}));
    simulate->add_option("--alpha-deg", alpha_deg, "Cone half-angle (deg)");
    simulate->add_option("--omega-freq", omega_freq, "Coning frequency (rad/s)");
    simulate->add_option("--omega", omega_vec, "Constant angular velocity x,y,z (rad/s)");
    simulate->add_option("--rate-hz", rate_hz, "Sampling rate (Hz)");
    simulate->add_option("--duration-s", duration_s, "Duration (s)");
    simulate->add_option("--mode", mode, "rate|increment")->check(CLI::IsMember({"rate", "increment"}));
    simulate->add_option("--out", sim_out, "Measurement CSV")->required();

    // reconstruct
    auto* reconstruct = app.add_subcommand("reconstruct", "Reconstruct attitude from a measurement file");
    std::string input;
    std::string algorithm = "quatfiter";
    int samples_per_interval = 8;
    std::optional<int> fit_degree;
    std::string truncation = "n+2";
    int iterations = 7;
    double stop_rms = 0.0;
    int substeps = 1;
    std::string rec_out;
    reconstruct->add_option("--input", input, "Measurement CSV")->required();
    reconstruct->add_option("--algorithm", algorithm, "quatfiter|rodfiter|twosample|rk4n|cg4n")
        ->check(CLI::IsMember({"quatfiter", "rodfiter", "twosample", "rk4n", "cg4n"}));
    reconstruct->add_option("--samples-per-interval", samples_per_interval, "Samples per update interval N");
    reconstruct->add_option("--fit-degree", fit_degree, "Fit degree n (default N-1)");
    reconstruct->add_option("--truncation", truncation, "Truncation degree: NT, n+K or none");
    reconstruct->add_option("--iterations", iterations, "Maximum iterations");
    reconstruct->add_option("--stop-rms", stop_rms, "Coefficient-change RMS stop threshold (0 = off)");
    reconstruct->add_option("--substeps", substeps, "RK4n/CG4n steps per update interval");
    reconstruct->add_option("--out", rec_out, "Error CSV")->required();

    // compare
    auto* compare = app.add_subcommand("compare", "Run several algorithms on one measurement stream");
    std::string cmp_config;
    std::string out_dir;
    compare->add_option("--config", cmp_config, "Config file")->required();
    compare->add_option("--out-dir", out_dir, "Output directory")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Time the configured algorithms");
    std::string bench_config;
    int reps = 50;
    std::string bench_out;
    bench->add_option("--config", bench_config, "Config file")->required();
    bench->add_option("--reps", reps, "Repetitions")->check(CLI::PositiveNumber);
    bench->add_option("--out", bench_out, "Timing CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            const Scenario scenario =
                sim_scenario == "coning"
                    ? Scenario(ConingSpec{alpha_deg * std::numbers::pi / 180.0, omega_freq})
                    : Scenario(ConstantRateSpec{parse_vec3(omega_vec)});
            const MeasurementStream stream =
                generate_measurements(scenario, rate_hz, duration_s, parse_sample_mode(mode));
            auto out = open_out(sim_out);
            write_measurements(out, stream, scenario_metadata(scenario));
            std::cout << "wrote " << stream.samples.size() << " samples to " << sim_out << "\n";
        } else if (*reconstruct) {
            auto in = open_in(input);
            const MeasurementFile file = read_measurements(in);
            const auto scenario = scenario_from_metadata(file.metadata);
            if (!scenario) {
                throw std::runtime_error("measurement file carries no '# scenario=' line; truth is unknown");
            }
            AlgorithmConfig config;
            config.algorithm = parse_algorithm(algorithm);
            config.fit_degree = fit_degree;
            config.truncation = TruncationSpec::parse(truncation);
            config.iterations = iterations;
            config.stop_rms = stop_rms;
            config.substeps = substeps;
            const ErrorSeries series = reconstruct_stream(file.stream, *scenario, config, samples_per_interval);
            auto out = open_out(rec_out);
            write_errors(out, {series});
            print_summary({series});
        } else if (*compare) {
            auto in = open_in(cmp_config);
            const SuiteConfig suite = suite_from_config(parse_key_values(in));
            const SuiteResult result = compare_algorithms(suite);
            const std::filesystem::path dir(out_dir);
            std::filesystem::create_directories(dir);
            {
                auto out = open_out((dir / "measurements.csv").string());
                write_measurements(out, result.stream, scenario_metadata(suite.scenario));
            }
            {
                auto out = open_out((dir / "errors.csv").string());
                write_errors(out, result.series);
            }
            if (!result.sweeps.empty()) {
                auto out = open_out((dir / "iterations.csv").string());
                write_errors(out, result.sweeps);
            }
            if (!result.timings.empty()) {
                auto out = open_out((dir / "timing.csv").string());
                write_timings(out, result.timings);
            }
            print_summary(result.series);
            print_timings(result.timings);
        } else if (*bench) {
            auto in = open_in(bench_config);
            SuiteConfig suite = suite_from_config(parse_key_values(in));
            const MeasurementStream stream = generate_measurements(suite.scenario, suite.sampling.rate_hz,
                                                                   suite.sampling.duration_s, suite.sampling.mode);
            std::vector<TimingReport> timings;
            for (const auto& config : suite.algorithms) {
                timings.push_back(time_algorithm(stream, suite.scenario, config,
                                                 suite.sampling.samples_per_interval, reps));
            }
            auto out = open_out(bench_out);
            write_timings(out, timings);
            print_timings(timings);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

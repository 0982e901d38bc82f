#include "attrecon/io.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace attrecon {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

constexpr double kDegToRad = std::numbers::pi / 180.0;

} // namespace

double parse_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid number for " + what + ": '" + text + "'");
    }
    if (used != text.size()) {
        throw std::invalid_argument("invalid number for " + what + ": '" + text + "'");
    }
    return v;
}

int parse_integer(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid integer for " + what + ": '" + text + "'");
    }
    if (used != text.size()) {
        throw std::invalid_argument("invalid integer for " + what + ": '" + text + "'");
    }
    return v;
}

Vec3 parse_vec3(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 3) {
        throw std::invalid_argument("expected three comma-separated values, got '" + text + "'");
    }
    return {parse_double(parts[0], "vector x"), parse_double(parts[1], "vector y"), parse_double(parts[2], "vector z")};
}

KeyValues scenario_metadata(const Scenario& scenario) {
    KeyValues meta;
    meta["scenario"] = scenario.name();
    if (const auto* c = std::get_if<ConingSpec>(&scenario.spec())) {
        meta["alpha_deg"] = format_double(c->alpha / kDegToRad);
        meta["omega_freq"] = format_double(c->Omega);
    } else {
        const auto& w = std::get<ConstantRateSpec>(scenario.spec()).omega;
        meta["omega"] = format_double(w.x()) + "," + format_double(w.y()) + "," + format_double(w.z());
    }
    return meta;
}

std::optional<Scenario> scenario_from_metadata(const KeyValues& meta) {
    const auto it = meta.find("scenario");
    if (it == meta.end()) {
        return std::nullopt;
    }
    auto get = [&](const char* key, const std::string& fallback) {
        const auto f = meta.find(key);
        return f == meta.end() ? fallback : f->second;
    };
    if (it->second == "coning") {
        const double alpha = parse_double(get("alpha_deg", "10"), "alpha_deg") * kDegToRad;
        const double freq = parse_double(get("omega_freq", format_double(0.74 * std::numbers::pi)), "omega_freq");
        return Scenario(ConingSpec{alpha, freq});
    }
    if (it->second == "constant") {
        return Scenario(ConstantRateSpec{parse_vec3(get("omega", "1,3,2"))});
    }
    throw std::invalid_argument("unknown scenario '" + it->second + "' (expected coning|constant)");
}

void write_measurements(std::ostream& out, const MeasurementStream& stream, const KeyValues& metadata) {
    for (const auto& [k, v] : metadata) {
        out << "# " << k << "=" << v << "\n";
    }
    out << "t_s,wx,wy,wz,mode\n";
    out << std::setprecision(17);
    const auto mode = to_string(stream.mode);
    for (const auto& m : stream.samples) {
        out << m.t << "," << m.value.x() << "," << m.value.y() << "," << m.value.z() << "," << mode << "\n";
    }
}

MeasurementFile read_measurements(std::istream& in) {
    MeasurementFile file;
    std::string line;
    bool header = false;
    std::optional<SampleMode> mode;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            const auto body = trim(line.substr(1));
            const auto eq = body.find('=');
            if (eq != std::string::npos) {
                file.metadata[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
            }
            continue;
        }
        if (!header) {
            if (line != "t_s,wx,wy,wz,mode") {
                throw std::runtime_error("measurement file: expected header 't_s,wx,wy,wz,mode', got '" + line + "'");
            }
            header = true;
            continue;
        }
        const auto cols = split(line, ',');
        if (cols.size() != 5) {
            throw std::runtime_error("measurement file: expected 5 columns in '" + line + "'");
        }
        const SampleMode row_mode = parse_sample_mode(cols[4]);
        if (mode && *mode != row_mode) {
            throw std::runtime_error("measurement file: mixed sample modes");
        }
        mode = row_mode;
        file.stream.samples.push_back({parse_double(cols[0], "t_s"),
                                       {parse_double(cols[1], "wx"), parse_double(cols[2], "wy"),
                                        parse_double(cols[3], "wz")}});
    }
    if (!header || file.stream.samples.empty()) {
        throw std::runtime_error("measurement file: no samples");
    }
    file.stream.mode = *mode;
    const auto& s = file.stream.samples;
    const double period = s.front().t;
    if (!(period > 0.0)) {
        throw std::runtime_error("measurement file: first sample time must be positive");
    }
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double expected = static_cast<double>(k + 1) * period;
        if (std::abs(s[k].t - expected) > 1e-9 * std::max(1.0, expected)) {
            throw std::runtime_error("measurement file: samples must be uniformly spaced from t = 0");
        }
    }
    // Times are restated as k / rate so they match freshly generated streams bit for bit.
    file.stream.rate_hz = static_cast<double>(s.size()) / s.back().t;
    for (std::size_t k = 0; k < s.size(); ++k) {
        file.stream.samples[k].t = static_cast<double>(k + 1) / file.stream.rate_hz;
    }
    return file;
}

void write_errors(std::ostream& out, const std::vector<ErrorSeries>& series) {
    out << "t_s,algorithm,iteration,principal_angle_error_rad,norm_discrepancy\n";
    out << std::setprecision(17);
    for (const auto& s : series) {
        for (const auto& r : s.records) {
            out << r.t << "," << s.algorithm << "," << r.iteration << "," << r.principal_angle_error << ","
                << r.norm_discrepancy << "\n";
        }
    }
}

std::vector<ErrorRecord> read_error_records(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != "t_s,algorithm,iteration,principal_angle_error_rad,norm_discrepancy") {
        throw std::runtime_error("error file: missing header");
    }
    std::vector<ErrorRecord> out;
    while (std::getline(in, line)) {
        if (trim(line).empty()) {
            continue;
        }
        const auto cols = split(trim(line), ',');
        if (cols.size() != 5) {
            throw std::runtime_error("error file: expected 5 columns in '" + line + "'");
        }
        out.push_back({parse_double(cols[0], "t_s"), parse_double(cols[3], "principal_angle_error_rad"),
                       parse_double(cols[4], "norm_discrepancy"), parse_integer(cols[2], "iteration")});
    }
    return out;
}

void write_timings(std::ostream& out, const std::vector<TimingReport>& reports) {
    out << "algorithm,samples_per_interval,fit_degree,truncation,iterations,repetitions,mean_wall_s\n";
    out << std::setprecision(9);
    for (const auto& r : reports) {
        out << r.algorithm << "," << r.samples_per_interval << "," << r.fit_degree << ","
            << (r.truncation ? std::to_string(*r.truncation) : std::string("none")) << "," << r.iterations << ","
            << r.repetitions << "," << r.mean_wall_s << "\n";
    }
}

KeyValues parse_key_values(std::istream& in) {
    KeyValues out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
        }
        if (!out.emplace(key, value).second) {
            throw std::runtime_error("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
    }
    return out;
}

namespace {

bool parse_bool(const std::string& text, const std::string& what) {
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw std::invalid_argument("invalid boolean for " + what + ": '" + text + "'");
}

} // namespace

SuiteConfig suite_from_config(const KeyValues& config) {
    static const std::set<std::string> kGlobalKeys{
        "scenario", "alpha_deg", "omega_freq", "omega",    "rate_hz", "duration_s", "mode",
        "samples_per_interval", "algorithms", "fit_degree", "truncation", "iterations", "stop_rms",
        "substeps", "reps", "timing", "sweep_iterations"};
    static const std::set<std::string> kPerAlgorithmKeys{"iterations", "truncation", "stop_rms", "fit_degree",
                                                         "substeps"};
    for (const auto& [key, value] : config) {
        if (kGlobalKeys.count(key)) {
            continue;
        }
        const auto dot = key.find('.');
        if (dot != std::string::npos) {
            parse_algorithm(key.substr(0, dot));
            if (kPerAlgorithmKeys.count(key.substr(dot + 1))) {
                continue;
            }
        }
        throw std::invalid_argument("unknown config key '" + key + "'");
    }

    auto get = [&](const std::string& key) -> std::optional<std::string> {
        const auto it = config.find(key);
        return it == config.end() ? std::nullopt : std::optional<std::string>(it->second);
    };

    KeyValues meta;
    meta["scenario"] = get("scenario").value_or("coning");
    for (const char* k : {"alpha_deg", "omega_freq", "omega"}) {
        if (auto v = get(k)) {
            meta[k] = *v;
        }
    }

    SuiteConfig suite;
    suite.scenario = *scenario_from_metadata(meta);
    if (auto v = get("rate_hz")) {
        suite.sampling.rate_hz = parse_double(*v, "rate_hz");
    }
    if (auto v = get("duration_s")) {
        suite.sampling.duration_s = parse_double(*v, "duration_s");
    }
    if (auto v = get("mode")) {
        suite.sampling.mode = parse_sample_mode(*v);
    }
    if (auto v = get("samples_per_interval")) {
        suite.sampling.samples_per_interval = parse_integer(*v, "samples_per_interval");
    }
    if (auto v = get("reps")) {
        suite.repetitions = parse_integer(*v, "reps");
    }
    if (auto v = get("timing")) {
        suite.timing = parse_bool(*v, "timing");
    }
    if (auto v = get("sweep_iterations")) {
        suite.sweep_iterations = parse_integer(*v, "sweep_iterations");
    }
    suite.sampling.validate();

    const std::string names = get("algorithms").value_or("quatfiter,rodfiter,twosample");
    for (const auto& name : split(names, ',')) {
        AlgorithmConfig algo;
        algo.algorithm = parse_algorithm(name);
        auto pick = [&](const std::string& field) {
            if (auto v = get(name + "." + field)) {
                return v;
            }
            return get(field);
        };
        if (auto v = pick("fit_degree")) {
            algo.fit_degree = parse_integer(*v, "fit_degree");
        }
        if (auto v = pick("truncation")) {
            algo.truncation = TruncationSpec::parse(*v);
        }
        if (auto v = pick("iterations")) {
            algo.iterations = parse_integer(*v, "iterations");
        }
        if (auto v = pick("stop_rms")) {
            algo.stop_rms = parse_double(*v, "stop_rms");
        }
        if (auto v = pick("substeps")) {
            algo.substeps = parse_integer(*v, "substeps");
        }
        suite.algorithms.push_back(algo);
    }
    return suite;
}

} // namespace attrecon

#pragma once

// Sweep description, evaluation and CSV handling behind the fascopula CLI.
// Everything numerical goes through the C API in fas/fas.h.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fascli {

// Exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SweepVariable { AvgSnrDb, Ports, DependenceParam, FadingM };

std::string to_string(SweepVariable v);
SweepVariable parse_sweep_variable(const std::string& name);

// Fixed system parameters shared by every sweep point. SNRs are in dB here;
// conversion to linear happens right before calling the library.
struct PointConfig {
    std::int64_t ports = 6;
    double m = 1.0;
    double mu = 1.0;
    double snr_db = 20.0;
    double threshold_db = 0.0;
    double alpha = 30.0;
    double beta = 30.0;
    double theta = 30.0;

    // Sets the field addressed by `v`; DependenceParam sets alpha, beta and theta.
    void set(SweepVariable v, double value);
    double param_for(const std::string& family) const;
};

struct SweepSpec {
    SweepVariable variable = SweepVariable::AvgSnrDb;
    std::vector<double> values;
    // Optional second dimension: one curve per (family, series value).
    std::optional<SweepVariable> series_variable;
    std::vector<double> series_values;
    std::vector<std::string> families{"frank", "clayton", "gumbel"};
    PointConfig fixed;
    std::int64_t mc_trials = 0; // 0 = analytic only
    std::uint64_t seed = 1;

    void validate() const;
};

// Expands start..stop by step, inclusive of stop up to rounding.
std::vector<double> expand_range(double start, double stop, double step);

// Reads a sweep spec from JSON. Keys absent from `j` keep their defaults.
// Schema:
//   {"sweep": {"variable": "avg_snr_db", "start": 0, "stop": 40, "step": 1} | {"variable": ..., "values": [...]},
//    "series": {"variable": "ports", "values": [1, 3, 6, 9]},
//    "families": ["frank", "clayton", "gumbel"],
//    "ports": 6, "m": 1, "mu": 1, "snr_db": 20, "threshold_db": 0,
//    "alpha": 30, "beta": 30, "theta": 30, "trials": 0, "seed": 1}
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);

struct OutageCurve {
    std::vector<std::string> header; // first entry names the swept variable
    std::vector<std::vector<double>> rows;

    bool operator==(const OutageCurve&) const = default;
};

OutageCurve run_sweep(const SweepSpec& spec);

// Comma separated, LF line endings, values as %.9e.
std::string format_number(double v);
std::string to_csv(const OutageCurve& curve);
OutageCurve parse_csv(const std::string& text);

// Writes `content` to `path`, or to stdout when `path` is empty.
void write_output(const std::string& path, const std::string& content);

// Single-point outage query.
struct OutageQuery {
    std::string family = "independence";
    double param = 0.0;
    PointConfig point;
};

OutageQuery outage_query_from_json(const nlohmann::json& j);
std::string run_outage(const OutageQuery& q);

// Simulation-vs-analytic comparison rows.
struct SimulationReport {
    std::string csv;
    int failures = 0;
};

std::vector<OutageQuery> simulation_grid(const PointConfig& base);
std::vector<OutageQuery> simulation_configs_from_json(const nlohmann::json& j);
SimulationReport run_simulation(const std::vector<OutageQuery>& configs, std::int64_t trials,
                                std::uint64_t seed, unsigned workers);

struct FigureSpec {
    std::string name;
    SweepSpec sweep;
};

// The five built-in figure reproductions.
std::vector<FigureSpec> builtin_figures();

} // namespace fascli

#pragma once
#include <optional>
#include <string>

#include <json.hpp>

#include "strainwave/experiments.hpp"

namespace strainwave {
namespace io {

using nlohmann::json;

// Everything a run can be configured with, in one document.  Sections other
// than "model" are optional and default when the command needs them.
struct FullConfig {
    ModelSpec model;
    std::optional<sim::SimConfig> grid;       // discretization section
    std::optional<sim::InitialData> init;
    std::optional<metrics::MeasureSettings> measure;
    struct Sweep {
        double s0_min = 0.0;
        double s0_max = 0.0;
        int points = 200;
        bool refine = true;
        int simulate_per_regime = 0;
    };
    std::optional<Sweep> sweep;
    double tie_tol = 1e-9;
};

// Parse + validate.  Errors name the offending key, e.g.
// "grid.n_cells: must be an even integer >= 64".
FullConfig parse_config(const std::string& text);
FullConfig parse_config_file(const std::string& path);

// Canonical form: sorted keys, every understood field present explicitly.
// parse(serialize(parse(x))) == parse(x).
json config_to_json(const FullConfig& c);
std::string serialize_config(const FullConfig& c);

// FNV-1a 64 over the canonical serialization; stable under key reordering
// of the input document.
std::string config_hash(const FullConfig& c);

// 17 significant digits (machine outputs) and 6 (human tables).
std::string fmt17(double v);
std::string fmt6(double v);

json outcome_to_json(const seq::PropagationOutcome& out);
json front_report_to_json(const metrics::FrontReport& rep);
json verify_report_to_json(const experiments::VerifyReport& rep);
json sweep_constants_to_json(const experiments::SweepResult& res);

// "# t=<17g> config_hash=<hex>" comment line, then x,S,I_1..,R_1.. rows.
std::string snapshot_csv(const sim::Snapshot& snap, const sim::Grid& g,
                         const std::string& cfg_hash);
std::string comparison_csv(const metrics::FrontReport& rep);
std::string sweep_csv(const experiments::SweepResult& res);
std::string sweep_plot_csv(const experiments::SweepResult& res);

// Aligned 6-digit tables for the terminal.
std::string outcome_table(const ModelSpec& m, const seq::PropagationOutcome& out);
std::string front_report_table(const metrics::FrontReport& rep);
std::string sweep_table(const experiments::SweepResult& res);

struct RunManifest {
    std::string command;
    std::string config_path;
    std::string cfg_hash;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
    std::string started_utc;
    std::string finished_utc;
    std::string status = "ok";        // ok | aborted | error
    std::string abort_reason;
    std::vector<std::string> outputs;
};
json manifest_to_json(const RunManifest& m);

std::string utc_now();
void write_file(const std::string& path, const std::string& content);

} // namespace io
} // namespace strainwave

// Command line front end: analyze | simulate | sweep | verify | plot.
// Exit codes: 0 ok, 2 bad config/arguments, 3 theorem not applicable,
// 4 verification mismatch, 5 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "strainwave/jsonio.hpp"
#include "strainwave/svg.hpp"

namespace fs = std::filesystem;
using namespace strainwave;

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_CONFIG = 2;
constexpr int EXIT_INAPPLICABLE = 3;
constexpr int EXIT_MISMATCH = 4;
constexpr int EXIT_NUMERICAL = 5;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
};

struct OutputWriter {
    fs::path dir;
    io::RunManifest manifest;
    bool enabled = false;

    void open(const CommonArgs& args, const std::string& command,
              const std::string& cfg_hash) {
        manifest.command = command;
        manifest.config_path = args.config_path;
        manifest.cfg_hash = cfg_hash;
        manifest.seed = args.seed;
        manifest.jobs = args.jobs;
        manifest.started_utc = io::utc_now();
        if (args.out_dir.empty()) return;
        dir = args.out_dir;
        fs::create_directories(dir);
        manifest.out_dir = dir.string();
        enabled = true;
    }

    void emit(const std::string& name, const std::string& content) {
        if (!enabled) return;
        io::write_file((dir / name).string(), content);
        manifest.outputs.push_back(name);
    }

    void close(const std::string& status, const std::string& reason = "") {
        if (!enabled) return;
        manifest.status = status;
        manifest.abort_reason = reason;
        manifest.finished_utc = io::utc_now();
        io::write_file((dir / "manifest.json").string(),
                       io::manifest_to_json(manifest).dump(2) + "\n");
    }
};

sim::SimConfig need_grid(const io::FullConfig& cfg) {
    if (!cfg.grid) throw ParamError("grid: section is required for this command");
    return *cfg.grid;
}

int cmd_analyze(const CommonArgs& args) {
    const auto cfg = io::parse_config_file(args.config_path);
    OutputWriter out;
    out.open(args, "analyze", io::config_hash(cfg));
    const auto outcome = seq::compute_sequence(cfg.model, cfg.tie_tol);
    std::cout << io::outcome_table(cfg.model, outcome);
    out.emit("outcome.json", io::outcome_to_json(outcome).dump(2) + "\n");
    out.close("ok");
    return EXIT_OK;
}

int cmd_simulate(const CommonArgs& args) {
    const auto cfg = io::parse_config_file(args.config_path);
    const auto simcfg = need_grid(cfg);
    const auto init = cfg.init ? *cfg.init
                               : sim::InitialData::defaults(cfg.model, simcfg.grid);
    metrics::MeasureSettings ms = cfg.measure.value_or(metrics::MeasureSettings{});
    if (!cfg.measure) ms.burn_in = 0.3 * simcfg.t_end;

    const std::string hash = io::config_hash(cfg);
    OutputWriter out;
    out.open(args, "simulate", hash);

    const auto outcome = seq::compute_sequence(cfg.model, cfg.tie_tol);
    std::cout << io::outcome_table(cfg.model, outcome);

    std::vector<sim::Snapshot> snaps;
    int snap_idx = 0;
    try {
        sim::run(cfg.model, simcfg, init, [&](const sim::Snapshot& s) {
            char name[48];
            std::snprintf(name, sizeof name, "snapshot_%04d.csv", snap_idx++);
            out.emit(name, io::snapshot_csv(s, simcfg.grid, hash));
            snaps.push_back(s);
        });
    } catch (const NumericalError& e) {
        // keep the partial snapshot stream on disk and say why it stopped
        out.close("aborted", e.what());
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_NUMERICAL;
    }

    const auto report =
        metrics::compare_with_prediction(snaps, cfg.model, simcfg.grid, init, outcome, ms);
    std::cout << io::front_report_table(report);
    out.emit("front_report.json", io::front_report_to_json(report).dump(2) + "\n");
    out.emit("comparison.csv", io::comparison_csv(report));
    out.close("ok");
    return EXIT_OK;
}

int cmd_sweep(const CommonArgs& args) {
    const auto cfg = io::parse_config_file(args.config_path);
    if (!cfg.sweep) throw ParamError("sweep: section is required for this command");
    if (cfg.model.strains.size() != 2)
        throw ParamError("model.strains: the sweep needs exactly 2 strains");

    experiments::SweepOptions opt;
    opt.points = cfg.sweep->points;
    opt.refine = cfg.sweep->refine;
    opt.simulate_per_regime = cfg.sweep->simulate_per_regime;
    opt.jobs = args.jobs;
    opt.tie_tol = cfg.tie_tol;
    if (cfg.grid) opt.sim = *cfg.grid;

    OutputWriter out;
    out.open(args, "sweep", io::config_hash(cfg));
    const auto res =
        experiments::sweep_corollary3(cfg.model.strains[0], cfg.model.strains[1],
                                      cfg.sweep->s0_min, cfg.sweep->s0_max, opt);
    std::cout << io::sweep_table(res);

    out.emit("sweep.csv", io::sweep_csv(res));
    out.emit("sweep_plot.csv", io::sweep_plot_csv(res));
    out.emit("sweep_summary.json", io::sweep_constants_to_json(res).dump(2) + "\n");

    svg::PlotSpec plot;
    plot.title = "final susceptible level vs initial level";
    plot.xlabel = "s0";
    plot.ylabel = "s_infinity";
    svg::Series line;
    for (const auto& p : res.points) {
        line.x.push_back(p.s0);
        line.y.push_back(p.s_infinity);
    }
    line.label = "predicted";
    plot.series.push_back(std::move(line));
    const auto& k = res.constants;
    if (k.two_regime) {
        plot.vlines.push_back({k.s_low, "s_low"});
        if (k.eps) plot.vlines.push_back({k.s_low + *k.eps, "s_low+eps"});
    }
    plot.vlines.push_back({k.s_bar, "s_bar"});
    out.emit("sweep.svg", svg::render_line_plot(plot));
    out.close("ok");
    return EXIT_OK;
}

int cmd_verify(const CommonArgs& args) {
    const auto cfg = io::parse_config_file(args.config_path);
    const auto simcfg = need_grid(cfg);
    const auto init = cfg.init ? *cfg.init
                               : sim::InitialData::defaults(cfg.model, simcfg.grid);
    metrics::MeasureSettings ms = cfg.measure.value_or(metrics::MeasureSettings{});
    if (!cfg.measure) ms.burn_in = 0.3 * simcfg.t_end;

    OutputWriter out;
    out.open(args, "verify", io::config_hash(cfg));
    const auto rep = experiments::verify_theorem1(cfg.model, simcfg, init, ms, cfg.tie_tol);
    std::cout << io::outcome_table(cfg.model, rep.outcome);
    out.emit("verify_report.json", io::verify_report_to_json(rep).dump(2) + "\n");
    switch (rep.status) {
        case experiments::VerifyStatus::inapplicable:
            std::cout << "theorem hypotheses do not hold; nothing to verify\n";
            out.close("ok");
            return EXIT_INAPPLICABLE;
        case experiments::VerifyStatus::mismatch:
            std::cout << io::front_report_table(*rep.front_report);
            out.close("ok");
            return EXIT_MISMATCH;
        case experiments::VerifyStatus::pass:
            std::cout << io::front_report_table(*rep.front_report);
            out.close("ok");
            return EXIT_OK;
    }
    return EXIT_OK;
}

// split one CSV line on commas (no quoting in our files)
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

int cmd_plot(const std::string& input, const std::string& out_path) {
    std::ifstream in(input);
    if (!in) throw ParamError("cannot open " + input);
    std::string line;
    std::vector<std::string> header;
    std::vector<std::vector<double>> cols;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header.empty()) {
            header = split_csv(line);
            cols.assign(header.size(), {});
            continue;
        }
        const auto cells = split_csv(line);
        for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) {
            try {
                cols[i].push_back(cells[i].empty() ? NAN : std::stod(cells[i]));
            } catch (...) {
                cols[i].push_back(NAN);
            }
        }
    }
    if (header.empty() || cols[0].empty())
        throw ParamError(input + ": no data rows");

    svg::PlotSpec plot;
    plot.xlabel = header[0];
    const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                             "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    if (header[0] == "x") {
        plot.title = "profiles " + fs::path(input).filename().string();
        plot.ylabel = "density";
    } else {
        plot.title = fs::path(input).filename().string();
        plot.ylabel = header.size() > 1 ? header[1] : "value";
    }
    int ci = 0;
    for (std::size_t j = 1; j < header.size(); ++j) {
        // skip non-numeric columns (regime labels etc.)
        bool numeric = false;
        for (double v : cols[j])
            if (!std::isnan(v)) numeric = true;
        if (!numeric) continue;
        svg::Series s;
        for (std::size_t i = 0; i < cols[0].size(); ++i) {
            if (std::isnan(cols[j][i])) continue;
            s.x.push_back(cols[0][i]);
            s.y.push_back(cols[j][i]);
        }
        s.label = header[j];
        s.color = palette[ci++ % 8];
        plot.series.push_back(std::move(s));
    }
    io::write_file(out_path, svg::render_line_plot(plot));
    std::cout << "wrote " << out_path << "\n";
    return EXIT_OK;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-strain epidemic front cascades: analysis, simulation, sweeps"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string plot_input, plot_out = "plot.svg";
    std::uint64_t seed_raw = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* copt = sub->add_option("--config", args.config_path, "JSON config file");
        if (needs_config) copt->required();
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_option("--seed", seed_raw, "seed for randomized harnesses")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--jobs", args.jobs, "worker threads for sweeps")
            ->check(CLI::Range(1, 256));
    };

    auto* analyze = app.add_subcommand("analyze", "front cascade from model parameters");
    add_common(analyze, true);
    auto* simulate = app.add_subcommand("simulate", "integrate the PDE system");
    add_common(simulate, true);
    auto* sweep = app.add_subcommand("sweep", "two-trait regime sweep over s0");
    add_common(sweep, true);
    auto* verify = app.add_subcommand("verify", "simulate and compare against prediction");
    add_common(verify, true);
    auto* plot = app.add_subcommand("plot", "render a produced CSV to SVG");
    plot->add_option("--input", plot_input, "CSV produced by this tool")->required();
    plot->add_option("--out", plot_out, "output SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? EXIT_OK : EXIT_CONFIG;
    }
    if (seed_set) args.seed = seed_raw;

    try {
        if (analyze->parsed()) return cmd_analyze(args);
        if (simulate->parsed()) return cmd_simulate(args);
        if (sweep->parsed()) return cmd_sweep(args);
        if (verify->parsed()) return cmd_verify(args);
        if (plot->parsed()) return cmd_plot(plot_input, plot_out);
    } catch (const ParamError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return EXIT_CONFIG;
    } catch (const ContractError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return EXIT_CONFIG;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return EXIT_NUMERICAL;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_NUMERICAL;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return EXIT_OK;
}

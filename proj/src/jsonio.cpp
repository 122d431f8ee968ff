#include "strainwave/jsonio.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace strainwave {
namespace io {

namespace {

[[noreturn]] void key_error(const std::string& path, const std::string& what) {
    throw ParamError(path + ": " + what);
}

double need_number(const json& j, const std::string& path) {
    if (!j.is_number()) key_error(path, "must be a number");
    return j.get<double>();
}

double need_positive(const json& j, const std::string& path) {
    const double v = need_number(j, path);
    if (!std::isfinite(v) || v <= 0.0) key_error(path, "must be finite and > 0");
    return v;
}

int need_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) key_error(path, "must be an integer");
    return j.get<int>();
}

bool need_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) key_error(path, "must be true or false");
    return j.get<bool>();
}

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> known) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) key_error(path + "." + it.key(), "unknown key");
    }
}

} // namespace

FullConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParamError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParamError("config root must be an object");
    reject_unknown(doc, "config", {"model", "grid", "init", "measure", "sweep", "tie_tol"});

    FullConfig c;

    if (!doc.contains("model")) throw ParamError("model: section is required");
    {
        const json& jm = doc["model"];
        if (!jm.is_object()) key_error("model", "must be an object");
        reject_unknown(jm, "model", {"s0", "strains"});
        if (!jm.contains("s0")) key_error("model.s0", "is required");
        c.model.s0 = need_positive(jm["s0"], "model.s0");
        if (!jm.contains("strains") || !jm["strains"].is_array() || jm["strains"].empty())
            key_error("model.strains", "must be a non-empty array");
        int idx = 0;
        for (const json& js : jm["strains"]) {
            ++idx;
            const std::string p = "model.strains[" + std::to_string(idx) + "]";
            if (!js.is_object()) key_error(p, "must be an object");
            reject_unknown(js, p, {"d", "alpha", "mu"});
            StrainParams sp;
            sp.d = js.contains("d") ? need_positive(js["d"], p + ".d") : 1.0;
            if (!js.contains("alpha")) key_error(p + ".alpha", "is required");
            if (!js.contains("mu")) key_error(p + ".mu", "is required");
            sp.alpha = need_positive(js["alpha"], p + ".alpha");
            sp.mu = need_positive(js["mu"], p + ".mu");
            c.model.strains.push_back(sp);
        }
        validate(c.model);
    }

    if (doc.contains("tie_tol")) {
        c.tie_tol = need_number(doc["tie_tol"], "tie_tol");
        if (!std::isfinite(c.tie_tol) || c.tie_tol < 0.0 || c.tie_tol > 1e-2)
            key_error("tie_tol", "must lie in [0, 1e-2]");
    }

    if (doc.contains("grid")) {
        const json& jg = doc["grid"];
        if (!jg.is_object()) key_error("grid", "must be an object");
        reject_unknown(jg, "grid",
                       {"half_length", "n_cells", "theta_cfl", "t_end",
                        "snapshot_interval", "scheme", "guard_level_rel"});
        sim::SimConfig sc;
        if (!jg.contains("half_length")) key_error("grid.half_length", "is required");
        if (!jg.contains("n_cells")) key_error("grid.n_cells", "is required");
        if (!jg.contains("t_end")) key_error("grid.t_end", "is required");
        sc.grid.half_length = need_positive(jg["half_length"], "grid.half_length");
        sc.grid.n_cells = need_int(jg["n_cells"], "grid.n_cells");
        if (sc.grid.n_cells < 64 || sc.grid.n_cells % 2 != 0)
            key_error("grid.n_cells", "must be an even integer >= 64");
        sc.t_end = need_positive(jg["t_end"], "grid.t_end");
        if (jg.contains("theta_cfl")) {
            sc.theta_cfl = need_number(jg["theta_cfl"], "grid.theta_cfl");
            if (!(sc.theta_cfl > 0.0) || sc.theta_cfl > 1.0)
                key_error("grid.theta_cfl", "must lie in (0, 1]");
        }
        sc.snapshot_interval = jg.contains("snapshot_interval")
                                   ? need_positive(jg["snapshot_interval"],
                                                   "grid.snapshot_interval")
                                   : sc.t_end / 20.0;
        if (jg.contains("guard_level_rel"))
            sc.guard_level_rel =
                need_positive(jg["guard_level_rel"], "grid.guard_level_rel");
        if (jg.contains("scheme")) {
            const json& js = jg["scheme"];
            if (!js.is_string()) key_error("grid.scheme", "must be a string");
            const std::string s = js.get<std::string>();
            if (s == "explicit-euler")
                sc.scheme = sim::Scheme::explicit_euler;
            else if (s == "strang-split")
                sc.scheme = sim::Scheme::strang_split;
            else
                key_error("grid.scheme",
                          "must be \"explicit-euler\" or \"strang-split\"");
        }
        sim::validate(sc);
        c.grid = sc;
    }

    if (doc.contains("init")) {
        if (!c.grid) throw ParamError("init: needs a grid section");
        const json& ji = doc["init"];
        if (!ji.is_object()) key_error("init", "must be an object");
        reject_unknown(ji, "init", {"bumps"});
        if (!ji.contains("bumps") || !ji["bumps"].is_array())
            key_error("init.bumps", "must be an array (one entry per strain)");
        sim::InitialData init;
        int idx = 0;
        for (const json& jb : ji["bumps"]) {
            ++idx;
            const std::string p = "init.bumps[" + std::to_string(idx) + "]";
            if (!jb.is_object()) key_error(p, "must be an object");
            reject_unknown(jb, p, {"center", "half_width", "amplitude", "shape"});
            sim::Bump b;
            if (jb.contains("center")) b.center = need_number(jb["center"], p + ".center");
            if (jb.contains("half_width"))
                b.half_width = need_number(jb["half_width"], p + ".half_width");
            if (jb.contains("amplitude"))
                b.amplitude = need_number(jb["amplitude"], p + ".amplitude");
            if (jb.contains("shape")) {
                const std::string s = jb["shape"].is_string()
                                          ? jb["shape"].get<std::string>()
                                          : std::string();
                if (s == "plateau")
                    b.shape = sim::BumpShape::plateau;
                else if (s == "cosine-bump")
                    b.shape = sim::BumpShape::cosine;
                else
                    key_error(p + ".shape", "must be \"plateau\" or \"cosine-bump\"");
            }
            init.bumps.push_back(b);
        }
        sim::validate(init, c.model, c.grid->grid);
        c.init = std::move(init);
    }

    if (doc.contains("measure")) {
        const json& jm = doc["measure"];
        if (!jm.is_object()) key_error("measure", "must be an object");
        reject_unknown(jm, "measure",
                       {"burn_in", "level_fraction", "plateau_margin", "delta",
                        "speed_tol_lo", "speed_tol_hi", "value_tol",
                        "extinct_sup_rel", "envelope_eps", "envelope_fit"});
        metrics::MeasureSettings ms;
        if (jm.contains("burn_in")) {
            ms.burn_in = need_number(jm["burn_in"], "measure.burn_in");
            if (ms.burn_in < 0.0) key_error("measure.burn_in", "must be >= 0");
        }
        auto frac = [&](const char* key, double& slot) {
            if (jm.contains(key)) {
                slot = need_number(jm[key], std::string("measure.") + key);
                if (!(slot > 0.0) || slot >= 1.0)
                    key_error(std::string("measure.") + key, "must lie in (0, 1)");
            }
        };
        frac("level_fraction", ms.level_fraction);
        frac("plateau_margin", ms.plateau_margin);
        if (jm.contains("delta") && !jm["delta"].is_null())
            ms.delta = need_positive(jm["delta"], "measure.delta");
        auto pos = [&](const char* key, double& slot) {
            if (jm.contains(key))
                slot = need_positive(jm[key], std::string("measure.") + key);
        };
        pos("speed_tol_lo", ms.speed_tol_lo);
        pos("speed_tol_hi", ms.speed_tol_hi);
        pos("value_tol", ms.value_tol);
        pos("extinct_sup_rel", ms.extinct_sup_rel);
        pos("envelope_eps", ms.envelope_eps);
        pos("envelope_fit", ms.envelope_fit);
        c.measure = ms;
    }

    if (doc.contains("sweep")) {
        const json& js = doc["sweep"];
        if (!js.is_object()) key_error("sweep", "must be an object");
        reject_unknown(js, "sweep",
                       {"s0_min", "s0_max", "points", "refine", "simulate_per_regime"});
        FullConfig::Sweep sw;
        if (!js.contains("s0_min") || !js.contains("s0_max"))
            key_error("sweep.s0_min", "and sweep.s0_max are required");
        sw.s0_min = need_positive(js["s0_min"], "sweep.s0_min");
        sw.s0_max = need_positive(js["s0_max"], "sweep.s0_max");
        if (!(sw.s0_max > sw.s0_min)) key_error("sweep.s0_max", "must exceed sweep.s0_min");
        if (js.contains("points")) {
            sw.points = need_int(js["points"], "sweep.points");
            if (sw.points < 2) key_error("sweep.points", "must be >= 2");
        }
        if (js.contains("refine")) sw.refine = need_bool(js["refine"], "sweep.refine");
        if (js.contains("simulate_per_regime")) {
            sw.simulate_per_regime =
                need_int(js["simulate_per_regime"], "sweep.simulate_per_regime");
            if (sw.simulate_per_regime < 0 || sw.simulate_per_regime > 5)
                key_error("sweep.simulate_per_regime", "must lie in [0, 5]");
        }
        c.sweep = sw;
    }

    return c;
}

FullConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParamError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

json config_to_json(const FullConfig& c) {
    json doc;
    json strains = json::array();
    for (const auto& s : c.model.strains)
        strains.push_back({{"d", s.d}, {"alpha", s.alpha}, {"mu", s.mu}});
    doc["model"] = {{"s0", c.model.s0}, {"strains", strains}};
    doc["tie_tol"] = c.tie_tol;
    if (c.grid) {
        doc["grid"] = {
            {"half_length", c.grid->grid.half_length},
            {"n_cells", c.grid->grid.n_cells},
            {"theta_cfl", c.grid->theta_cfl},
            {"t_end", c.grid->t_end},
            {"snapshot_interval", c.grid->snapshot_interval},
            {"guard_level_rel", c.grid->guard_level_rel},
            {"scheme", c.grid->scheme == sim::Scheme::explicit_euler ? "explicit-euler"
                                                                     : "strang-split"},
        };
    }
    if (c.init) {
        json bumps = json::array();
        for (const auto& b : c.init->bumps)
            bumps.push_back({{"center", b.center},
                             {"half_width", b.half_width},
                             {"amplitude", b.amplitude},
                             {"shape", b.shape == sim::BumpShape::plateau ? "plateau"
                                                                          : "cosine-bump"}});
        doc["init"] = {{"bumps", bumps}};
    }
    if (c.measure) {
        const auto& ms = *c.measure;
        json jm = {{"burn_in", ms.burn_in},
                   {"level_fraction", ms.level_fraction},
                   {"plateau_margin", ms.plateau_margin},
                   {"speed_tol_lo", ms.speed_tol_lo},
                   {"speed_tol_hi", ms.speed_tol_hi},
                   {"value_tol", ms.value_tol},
                   {"extinct_sup_rel", ms.extinct_sup_rel},
                   {"envelope_eps", ms.envelope_eps},
                   {"envelope_fit", ms.envelope_fit}};
        if (ms.delta)
            jm["delta"] = *ms.delta;
        else
            jm["delta"] = nullptr;
        doc["measure"] = jm;
    }
    if (c.sweep) {
        doc["sweep"] = {{"s0_min", c.sweep->s0_min},
                        {"s0_max", c.sweep->s0_max},
                        {"points", c.sweep->points},
                        {"refine", c.sweep->refine},
                        {"simulate_per_regime", c.sweep->simulate_per_regime}};
    }
    return doc;
}

std::string serialize_config(const FullConfig& c) { return config_to_json(c).dump(2) + "\n"; }

std::string config_hash(const FullConfig& c) {
    const std::string s = config_to_json(c).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

json outcome_to_json(const seq::PropagationOutcome& out) {
    json sep = json::array();
    for (const auto& t : out.separation)
        sep.push_back({{"step", t.step},
                       {"strain", t.strain},
                       {"lhs", t.lhs},
                       {"rhs", t.rhs},
                       {"margin", t.margin},
                       {"pass", t.pass}});
    json sub = json::array();
    for (const auto& t : out.subcritical)
        sub.push_back({{"strain", t.strain},
                       {"growth", t.growth},
                       {"margin", t.margin},
                       {"pass", t.pass}});
    json ties = json::array();
    for (const auto& t : out.ties)
        ties.push_back({{"step", t.step}, {"strains", t.strains}, {"rel_gap", t.rel_gap}});
    return {{"indices", out.indices},
            {"speeds", out.speeds},
            {"values", out.values},
            {"levels", out.levels},
            {"s_infinity", out.s_infinity},
            {"extinct", out.extinct},
            {"ties", ties},
            {"hypotheses",
             {{"separation", {{"pass", out.hyp_separation}, {"terms", sep}}},
              {"subcritical", {{"pass", out.hyp_subcritical}, {"terms", sub}}}}},
            {"theorem_applicable", out.theorem_applicable}};
}

json front_report_to_json(const metrics::FrontReport& rep) {
    json rows = json::array();
    for (const auto& r : rep.rows) {
        json row = {{"strain", r.strain},
                    {"predicted_propagates", r.predicted_propagates},
                    {"measured_propagates", r.measured_propagates},
                    {"partition_ok", r.partition_ok}};
        if (r.predicted_propagates) {
            row["c_pred"] = r.c_pred;
            row["rho_pred"] = r.rho_pred;
        }
        if (r.measured_propagates) {
            row["c_meas"] = r.c_meas;
            row["rho_meas"] = r.rho_meas;
            row["front_position"] = r.front_position;
            row["speed_rel_err"] = r.speed_rel_err;
            row["value_rel_err"] = r.value_rel_err;
            row["speed_ok"] = r.speed_ok;
            row["value_ok"] = r.value_ok;
        }
        if (r.envelope) {
            row["envelope"] = {{"pass", r.envelope->pass},
                               {"a_fitted", r.envelope->a_fitted},
                               {"worst_log_excess", r.envelope->worst_log_excess},
                               {"worst_t", r.envelope->worst_t},
                               {"worst_x", r.envelope->worst_x}};
        }
        rows.push_back(row);
    }
    return {{"strains", rows},
            {"s_inf_pred", rep.s_inf_pred},
            {"s_inf_meas", rep.s_inf_meas},
            {"s_inf_rel_err", rep.s_inf_rel_err},
            {"s_inf_ok", rep.s_inf_ok},
            {"partition_ok", rep.partition_ok},
            {"overall_pass", rep.overall_pass}};
}

json verify_report_to_json(const experiments::VerifyReport& rep) {
    json j = {{"outcome", outcome_to_json(rep.outcome)}};
    switch (rep.status) {
        case experiments::VerifyStatus::inapplicable: j["status"] = "inapplicable"; break;
        case experiments::VerifyStatus::pass: j["status"] = "pass"; break;
        case experiments::VerifyStatus::mismatch: j["status"] = "mismatch"; break;
    }
    if (rep.front_report) j["front_report"] = front_report_to_json(*rep.front_report);
    return j;
}

json sweep_constants_to_json(const experiments::SweepResult& res) {
    const auto& k = res.constants;
    json j = {{"relabeled", k.relabeled},
              {"ratio", k.ratio},
              {"ratio_low", k.ratio_low},
              {"two_regime", k.two_regime},
              {"s_bar", k.s_bar},
              {"all_agree_outside_gap", res.all_agree_outside_gap}};
    if (k.two_regime) j["s_low"] = k.s_low;
    if (k.eps)
        j["eps"] = *k.eps;
    else
        j["eps"] = nullptr;
    return j;
}

std::string snapshot_csv(const sim::Snapshot& snap, const sim::Grid& g,
                         const std::string& cfg_hash) {
    std::ostringstream os;
    const std::size_t nk = snap.I.size();
    os << "# t=" << fmt17(snap.t) << " config_hash=" << cfg_hash << "\n";
    os << "x,S";
    for (std::size_t k = 1; k <= nk; ++k) os << ",I_" << k;
    for (std::size_t k = 1; k <= nk; ++k) os << ",R_" << k;
    os << "\n";
    for (int i = 0; i < g.n_cells; ++i) {
        os << fmt17(g.x(i)) << ',' << fmt17(snap.S[i]);
        for (std::size_t k = 0; k < nk; ++k) os << ',' << fmt17(snap.I[k][i]);
        for (std::size_t k = 0; k < nk; ++k) os << ',' << fmt17(snap.R[k][i]);
        os << "\n";
    }
    return os.str();
}

std::string comparison_csv(const metrics::FrontReport& rep) {
    std::ostringstream os;
    os << "strain,predicted_propagates,measured_propagates,c_pred,c_meas,"
          "speed_rel_err,speed_ok,rho_pred,rho_meas,value_rel_err,value_ok,"
          "partition_ok\n";
    for (const auto& r : rep.rows) {
        os << r.strain << ',' << (r.predicted_propagates ? 1 : 0) << ','
           << (r.measured_propagates ? 1 : 0) << ',';
        os << (r.predicted_propagates ? fmt17(r.c_pred) : "") << ','
           << (r.measured_propagates ? fmt17(r.c_meas) : "") << ','
           << (r.measured_propagates && r.predicted_propagates ? fmt17(r.speed_rel_err)
                                                               : "")
           << ',' << (r.speed_ok ? 1 : 0) << ','
           << (r.predicted_propagates ? fmt17(r.rho_pred) : "") << ','
           << (r.measured_propagates ? fmt17(r.rho_meas) : "") << ','
           << (r.measured_propagates && r.predicted_propagates ? fmt17(r.value_rel_err)
                                                               : "")
           << ',' << (r.value_ok ? 1 : 0) << ',' << (r.partition_ok ? 1 : 0) << "\n";
    }
    return os.str();
}

std::string sweep_csv(const experiments::SweepResult& res) {
    std::ostringstream os;
    os << "s0,regime,regime_structural,p,k_sequence,s_inf_analytic,s_inf_measured\n";
    for (const auto& p : res.points) {
        os << fmt17(p.s0) << ',' << experiments::regime_name(p.closed_form) << ','
           << experiments::regime_name(p.structural) << ',' << p.p << ',';
        for (std::size_t i = 0; i < p.indices.size(); ++i) {
            if (i) os << '-';
            os << p.indices[i];
        }
        os << ',' << fmt17(p.s_infinity) << ','
           << (p.s_infinity_measured ? fmt17(*p.s_infinity_measured) : "") << "\n";
    }
    return os.str();
}

std::string sweep_plot_csv(const experiments::SweepResult& res) {
    std::ostringstream os;
    os << "s0,s_infinity\n";
    for (const auto& p : res.points)
        os << fmt17(p.s0) << ',' << fmt17(p.s_infinity) << "\n";
    return os.str();
}

namespace {

void table_row(std::ostringstream& os, std::initializer_list<std::string> cells,
               std::initializer_list<int> widths) {
    auto w = widths.begin();
    for (const auto& c : cells) {
        os << ' ';
        os << c;
        const int pad = *w - static_cast<int>(c.size());
        for (int i = 0; i < pad; ++i) os << ' ';
        ++w;
    }
    os << "\n";
}

} // namespace

std::string outcome_table(const ModelSpec& m, const seq::PropagationOutcome& out) {
    std::ostringstream os;
    os << "propagation sequence for " << m.strains.size() << " strain(s), s0 = "
       << fmt6(m.s0) << "\n";
    table_row(os, {"step", "strain", "speed", "value", "level_after"},
              {5, 7, 12, 12, 12});
    for (std::size_t i = 0; i < out.indices.size(); ++i) {
        table_row(os,
                  {std::to_string(i + 1), std::to_string(out.indices[i]),
                   fmt6(out.speeds[i]), fmt6(out.values[i]), fmt6(out.levels[i + 1])},
                  {5, 7, 12, 12, 12});
    }
    if (out.indices.empty()) os << " (no strain can spread at s0)\n";
    os << " s_infinity = " << fmt6(out.s_infinity) << "\n";
    if (!out.extinct.empty()) {
        os << " extinct:";
        for (int k : out.extinct) os << ' ' << k;
        os << "\n";
    }
    for (const auto& t : out.ties) {
        os << " WARNING: near-tie at step " << t.step << " between strains";
        for (int k : t.strains) os << ' ' << k;
        os << " (rel gap " << fmt6(t.rel_gap) << "); prediction order is fragile\n";
    }
    os << " hypotheses: separation " << (out.hyp_separation ? "pass" : "FAIL")
       << ", subcriticality " << (out.hyp_subcritical ? "pass" : "FAIL")
       << ", theorem " << (out.theorem_applicable ? "applicable" : "NOT applicable")
       << "\n";
    return os.str();
}

std::string front_report_table(const metrics::FrontReport& rep) {
    std::ostringstream os;
    table_row(os,
              {"strain", "predicted", "measured", "c_pred", "c_meas", "rho_pred",
               "rho_meas", "ok"},
              {6, 10, 10, 10, 10, 10, 10, 4});
    for (const auto& r : rep.rows) {
        const bool ok = r.partition_ok &&
                        (!r.predicted_propagates || (r.speed_ok && r.value_ok));
        table_row(os,
                  {std::to_string(r.strain),
                   r.predicted_propagates ? "spreads" : "extinct",
                   r.measured_propagates ? "spreads" : "extinct",
                   r.predicted_propagates ? fmt6(r.c_pred) : "-",
                   r.measured_propagates ? fmt6(r.c_meas) : "-",
                   r.predicted_propagates ? fmt6(r.rho_pred) : "-",
                   r.measured_propagates ? fmt6(r.rho_meas) : "-", ok ? "yes" : "NO"},
                  {6, 10, 10, 10, 10, 10, 10, 4});
    }
    os << " s_infinity: predicted " << fmt6(rep.s_inf_pred) << ", measured "
       << fmt6(rep.s_inf_meas) << " (" << (rep.s_inf_ok ? "ok" : "OFF") << ")\n";
    os << " overall: " << (rep.overall_pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string sweep_table(const experiments::SweepResult& res) {
    std::ostringstream os;
    const auto& k = res.constants;
    os << "two-trait regime sweep (d2/d1 = " << fmt6(k.ratio) << ")\n";
    os << " threshold ratio alpha1/alpha2 = " << fmt6(k.ratio_low) << "\n";
    if (k.two_regime) {
        os << " speed crossing s_low = " << fmt6(k.s_low) << "\n";
        os << " gap width eps = " << (k.eps ? fmt6(*k.eps) : std::string("(scan)"))
           << "\n";
    }
    os << " depletion boundary s_bar = " << fmt6(k.s_bar) << "\n";
    // compress consecutive points with the same label into bands
    std::size_t i = 0;
    while (i < res.points.size()) {
        std::size_t j = i;
        while (j + 1 < res.points.size() &&
               res.points[j + 1].closed_form == res.points[i].closed_form)
            ++j;
        os << " [" << fmt6(res.points[i].s0) << ", " << fmt6(res.points[j].s0) << "] "
           << experiments::regime_name(res.points[i].closed_form) << "\n";
        i = j + 1;
    }
    os << " brute-force agreement outside gap: "
       << (res.all_agree_outside_gap ? "yes" : "NO") << "\n";
    return os.str();
}

json manifest_to_json(const RunManifest& m) {
    json j = {{"tool", "strainwave"},
              {"version", "0.1.0"},
              {"command", m.command},
              {"config_path", m.config_path},
              {"config_hash", m.cfg_hash},
              {"out_dir", m.out_dir},
              {"jobs", m.jobs},
              {"started_utc", m.started_utc},
              {"finished_utc", m.finished_utc},
              {"status", m.status},
              {"outputs", m.outputs}};
    if (m.seed) j["seed"] = *m.seed;
    if (!m.abort_reason.empty()) j["abort_reason"] = m.abort_reason;
    return j;
}

std::string utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out) throw Error("short write to " + path);
}

} // namespace io
} // namespace strainwave

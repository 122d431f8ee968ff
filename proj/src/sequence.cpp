#include "strainwave/sequence.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>

namespace strainwave {

void validate(const ModelSpec& m) {
    if (m.strains.empty())
        throw ParamError("model needs at least one strain");
    for (const auto& s : m.strains) validate(s);
    if (!std::isfinite(m.s0) || m.s0 <= 0.0)
        throw ParamError("s0 must be finite and > 0");
}

namespace seq {

using kinetics::speed;

std::vector<SeparationTerm> check_speed_separation(const ModelSpec& m,
                                                   const std::vector<int>& indices,
                                                   const std::vector<double>& levels) {
    std::vector<SeparationTerm> terms;
    const int p = static_cast<int>(indices.size());
    // step i (1-based) compares against the i-th front's speed; nothing to
    // check for the last front or when p <= 1
    for (int i = 1; i <= p - 1; ++i) {
        const int ki = indices[i - 1];
        const double ci = speed(m.strains[ki - 1], levels[i - 1]);
        for (int k = 1; k <= static_cast<int>(m.strains.size()); ++k) {
            if (std::find(indices.begin(), indices.begin() + i, k) != indices.begin() + i)
                continue;
            SeparationTerm t;
            t.step = i;
            t.strain = k;
            t.lhs = speed(m.strains[k - 1], levels[i - 1]) + speed(m.strains[k - 1], levels[i]);
            t.rhs = ci;
            t.margin = (ci - t.lhs) / ci;
            t.pass = t.lhs < ci;
            terms.push_back(t);
        }
    }
    return terms;
}

std::vector<SubcriticalTerm> check_subcriticality(const ModelSpec& m,
                                                  const std::vector<int>& extinct,
                                                  double s_p) {
    std::vector<SubcriticalTerm> terms;
    for (int k : extinct) {
        const auto& s = m.strains[k - 1];
        SubcriticalTerm t;
        t.strain = k;
        t.growth = s.alpha * s_p - s.mu;
        t.margin = -t.growth / s.mu;
        t.pass = t.growth < 0.0;
        terms.push_back(t);
    }
    return terms;
}

PropagationOutcome compute_sequence(const ModelSpec& m, double tie_tol) {
    validate(m);
    if (!std::isfinite(tie_tol) || tie_tol < 0.0 || tie_tol > 1e-2)
        throw ParamError("tie_tol must lie in [0, 1e-2]");

    const int n = static_cast<int>(m.strains.size());
    PropagationOutcome out;
    out.levels.push_back(m.s0);

    std::vector<bool> selected(static_cast<std::size_t>(n), false);
    double level = m.s0;
    for (int step = 1; step <= n; ++step) {
        int best = 0;
        double cmax = 0.0;
        for (int k = 1; k <= n; ++k) {
            if (selected[k - 1]) continue;
            const double c = speed(m.strains[k - 1], level);
            if (c > 0.0 && (best == 0 || c > cmax)) {
                best = k;
                cmax = c;
            }
        }
        if (best == 0) break;   // nobody can grow at this level

        TieRecord tie;
        tie.step = step;
        tie.rel_gap = 1.0;
        for (int k = 1; k <= n; ++k) {
            if (selected[k - 1] || k == best) continue;
            const double c = speed(m.strains[k - 1], level);
            if (c <= 0.0) continue;
            const double gap = (cmax - c) / cmax;
            if (gap <= tie_tol) {
                if (tie.strains.empty()) tie.strains.push_back(best);
                tie.strains.push_back(k);
                tie.rel_gap = std::min(tie.rel_gap, gap);
            }
        }
        if (!tie.strains.empty()) {
            std::sort(tie.strains.begin(), tie.strains.end());
            out.ties.push_back(std::move(tie));
        }

        const auto rho = kinetics::asymptotic_value(m.strains[best - 1], level);
        assert(rho.has_value());   // c > 0 means alpha*level > mu
        selected[best - 1] = true;
        out.indices.push_back(best);
        out.speeds.push_back(cmax);
        out.values.push_back(*rho);
        level = kinetics::depleted_level(m.strains[best - 1], level, *rho);
        out.levels.push_back(level);
    }

    for (int k = 1; k <= n; ++k)
        if (!selected[k - 1]) out.extinct.push_back(k);
    out.s_infinity = out.levels.back();

    out.separation = check_speed_separation(m, out.indices, out.levels);
    out.subcritical = check_subcriticality(m, out.extinct, out.s_infinity);
    out.hyp_separation = std::all_of(out.separation.begin(), out.separation.end(),
                                     [](const SeparationTerm& t) { return t.pass; });
    out.hyp_subcritical = std::all_of(out.subcritical.begin(), out.subcritical.end(),
                                      [](const SubcriticalTerm& t) { return t.pass; });
    out.theorem_applicable = out.hyp_separation && out.hyp_subcritical && out.ties.empty();

    // structural invariants of the recursion itself
    for (std::size_t i = 1; i < out.speeds.size(); ++i)
        assert(out.speeds[i] < out.speeds[i - 1]);
    for (std::size_t i = 1; i < out.levels.size(); ++i)
        assert(out.levels[i] < out.levels[i - 1]);

    return out;
}

CascadeChains cascade_monotonicity(const ModelSpec& m, const PropagationOutcome& out) {
    validate(m);
    for (const auto& s : m.strains)
        if (s.d != m.strains.front().d)
            throw ContractError("cascade monotonicity requires equal diffusivities");
    if (!out.theorem_applicable)
        throw ContractError("cascade monotonicity requires an applicable outcome");

    CascadeChains ch;
    for (int k : out.indices) {
        ch.alpha_chain.push_back(m.strains[k - 1].alpha);
        ch.mu_chain.push_back(m.strains[k - 1].mu);
    }
    auto strict_dec = [](const std::vector<double>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(v[i] < v[i - 1])) return false;
        return true;
    };
    ch.alpha_strictly_decreasing = strict_dec(ch.alpha_chain);
    ch.mu_strictly_decreasing = strict_dec(ch.mu_chain);
    return ch;
}

} // namespace seq
} // namespace strainwave

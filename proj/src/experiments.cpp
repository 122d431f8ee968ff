#include "strainwave/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <random>

#include "strainwave/rootfind.hpp"

namespace strainwave {
namespace experiments {

using kinetics::asymptotic_value;
using kinetics::depleted_level;
using kinetics::speed;

Corollary1Scenario build_corollary1(double alpha1, double mu1, double s0) {
    StrainParams s1{1.0, alpha1, mu1};
    validate(s1);
    validate_level(s0);
    if (alpha1 * s0 <= mu1)
        throw ParamError("corollary 1 needs alpha1*s0/mu1 > 1");

    Corollary1Scenario sc;
    const auto rho = asymptotic_value(s1, s0);
    sc.s1 = depleted_level(s1, s0, *rho);

    const double lam_lo = alpha1 / mu1;
    const double lam_hi = 1.0 / sc.s1;
    // s0 > mu1/alpha1 forces s1 < mu1/alpha1, so the interval is never empty
    sc.lambda = 0.5 * (lam_lo + lam_hi);

    const double budget = alpha1 * s0 - mu1;
    double eps = 1.0;
    while (!(eps * (sc.lambda * s0 - 1.0) < budget)) {
        eps *= 0.5;
        if (eps < 1e-12)
            throw NumericalError("corollary 1: eps scan underflowed");
    }
    sc.eps = eps;

    StrainParams s2{1.0, eps * sc.lambda, eps};
    sc.model.strains = {s1, s2};
    sc.model.s0 = s0;
    sc.r0_1 = kinetics::basic_reproduction_number(s1, s0);
    sc.r0_2 = kinetics::basic_reproduction_number(s2, s0);
    sc.outcome = seq::compute_sequence(sc.model);
    return sc;
}

namespace {

// largest root of z - th2*ln z = level, where th2 = mu2/alpha2 and the
// level exceeds the convex minimum at z = th2
double largest_g_root(double th2, double level) {
    auto g = [&](double z) { return z - th2 * std::log(z) - level; };
    auto gp = [&](double z) { return 1.0 - th2 / z; };
    double lo = th2;
    double hi = 2.0 * th2;
    int doublings = 0;
    while (g(hi) <= 0.0) {
        hi *= 2.0;
        if (++doublings > 200) throw NumericalError("depletion boundary: bracket blew up");
    }
    return find_root(g, gp, lo, hi);
}

} // namespace

Corollary3Constants corollary3_constants(const StrainParams& t1_in,
                                         const StrainParams& t2_in) {
    validate(t1_in);
    validate(t2_in);
    StrainParams t1 = t1_in, t2 = t2_in;
    Corollary3Constants k;
    const double th1_in = t1.mu / t1.alpha;
    const double th2_in = t2.mu / t2.alpha;
    if (th1_in == th2_in)
        throw ParamError("the two traits need distinct thresholds mu/alpha");
    if (th1_in > th2_in) {
        std::swap(t1, t2);
        k.relabeled = true;
    }

    k.ratio = t2.d / t1.d;
    k.ratio_low = t1.alpha / t2.alpha;
    k.two_regime = k.ratio > k.ratio_low;
    if (k.two_regime)
        k.s_low = (t2.d * t2.mu - t1.d * t1.mu) / (t2.d * t2.alpha - t1.d * t1.alpha);

    const double th1 = t1.mu / t1.alpha;
    const double th2 = t2.mu / t2.alpha;
    k.s_bar = largest_g_root(th2, th1 - th2 * std::log(th1));

    const double denom4 = t2.d * t2.alpha - 4.0 * t1.d * t1.alpha;
    if (k.two_regime && denom4 > 0.0) {
        k.eps = 3.0 * t2.d * t1.d * (t2.mu * t1.alpha - t1.mu * t2.alpha) /
                (denom4 * (t2.d * t2.alpha - t1.d * t1.alpha));
    }
    return k;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::no_epidemic: return "no-epidemic";
        case Regime::only_1: return "only-1";
        case Regime::two_then_one: return "2-then-1";
        case Regime::only_2: return "only-2";
        case Regime::gap: return "gap";
        case Regime::other: return "other";
    }
    return "other";
}

namespace {

Regime structural_regime(const seq::PropagationOutcome& out) {
    const auto& idx = out.indices;
    if (idx.empty()) return Regime::no_epidemic;
    if (idx.size() == 1) return idx[0] == 1 ? Regime::only_1 : Regime::only_2;
    if (idx.size() == 2 && idx[0] == 2 && idx[1] == 1) return Regime::two_then_one;
    return Regime::other;
}

Regime closed_form_regime(const StrainParams& t1, const StrainParams& t2,
                          const Corollary3Constants& k, double s0,
                          const seq::PropagationOutcome& out) {
    const double th1 = t1.mu / t1.alpha;
    if (s0 <= th1) return Regime::no_epidemic;
    if (!k.two_regime) return Regime::only_1;
    if (s0 < k.s_low) return Regime::only_1;
    double gap_hi;
    if (k.eps) {
        gap_hi = k.s_low + *k.eps;
    } else {
        // no closed-form width: fall back on the per-point separation verdict
        gap_hi = (structural_regime(out) == Regime::two_then_one && !out.hyp_separation)
                     ? s0 + 1.0   // this point is unverifiable
                     : s0 - 1.0;  // this point is fine
    }
    if (s0 <= gap_hi) return Regime::gap;
    return s0 < k.s_bar ? Regime::two_then_one : Regime::only_2;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v.push_back(lo + (hi - lo) * i / (n - 1));
    return v;
}

SweepPoint eval_point(const StrainParams& t1, const StrainParams& t2,
                      const Corollary3Constants& k, double s0, double tie_tol) {
    ModelSpec m;
    m.strains = {t1, t2};
    m.s0 = s0;
    const auto out = seq::compute_sequence(m, tie_tol);
    SweepPoint pt;
    pt.s0 = s0;
    pt.structural = structural_regime(out);
    pt.closed_form = closed_form_regime(t1, t2, k, s0, out);
    pt.in_gap = pt.closed_form == Regime::gap;
    pt.agree = pt.in_gap || pt.closed_form == pt.structural;
    pt.p = static_cast<int>(out.indices.size());
    pt.indices = out.indices;
    pt.s_infinity = out.s_infinity;
    return pt;
}

} // namespace

SweepResult sweep_corollary3(const StrainParams& trait1, const StrainParams& trait2,
                             double s0_lo, double s0_hi, const SweepOptions& opt) {
    Corollary3Constants k = corollary3_constants(trait1, trait2);
    StrainParams t1 = trait1, t2 = trait2;
    if (k.relabeled) std::swap(t1, t2);

    if (!(s0_lo > 0.0) || !(s0_hi > s0_lo))
        throw ParamError("sweep needs 0 < s0_lo < s0_hi");
    if (opt.points < 2) throw ParamError("sweep needs at least 2 points");
    if (opt.simulate_per_regime < 0 || opt.simulate_per_regime > 5)
        throw ParamError("simulate_per_regime must lie in [0, 5]");

    SweepResult res;
    res.trait1 = t1;
    res.trait2 = t2;
    res.constants = k;

    std::vector<double> grid = linspace(s0_lo, s0_hi, opt.points);

    auto eval_grid = [&](const std::vector<double>& xs) {
        std::vector<SweepPoint> pts(xs.size());
        if (opt.jobs > 1) {
            std::atomic<std::size_t> next{0};
            auto worker = [&]() {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= xs.size()) break;
                    pts[i] = eval_point(t1, t2, k, xs[i], opt.tie_tol);
                }
            };
            std::vector<std::future<void>> futs;
            for (int j = 0; j < opt.jobs; ++j)
                futs.push_back(std::async(std::launch::async, worker));
            for (auto& f : futs) f.get();
        } else {
            for (std::size_t i = 0; i < xs.size(); ++i)
                pts[i] = eval_point(t1, t2, k, xs[i], opt.tie_tol);
        }
        return pts;
    };

    std::vector<SweepPoint> pts = eval_grid(grid);

    if (opt.refine) {
        // 4 extra points inside every interval whose labels differ -> 5x density
        std::vector<double> extra;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (pts[i].closed_form != pts[i - 1].closed_form ||
                pts[i].structural != pts[i - 1].structural) {
                const double a = pts[i - 1].s0, b = pts[i].s0;
                for (int j = 1; j <= 4; ++j)
                    extra.push_back(a + (b - a) * j / 5.0);
            }
        }
        if (!extra.empty()) {
            auto fine = eval_grid(extra);
            pts.insert(pts.end(), fine.begin(), fine.end());
            std::sort(pts.begin(), pts.end(),
                      [](const SweepPoint& a, const SweepPoint& b) { return a.s0 < b.s0; });
        }
    }

    if (opt.simulate_per_regime > 0) {
        if (!opt.sim) throw ParamError("simulate_per_regime needs a sim config template");
        for (Regime r : {Regime::no_epidemic, Regime::only_1, Regime::two_then_one,
                         Regime::only_2}) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < pts.size(); ++i)
                if (pts[i].structural == r && !pts[i].in_gap) members.push_back(i);
            if (members.empty()) continue;
            const int reps = std::min<int>(opt.simulate_per_regime,
                                           static_cast<int>(members.size()));
            for (int j = 0; j < reps; ++j) {
                // evenly spaced representatives across the regime band
                const std::size_t pick =
                    members[(members.size() - 1) * static_cast<std::size_t>(j) /
                            static_cast<std::size_t>(std::max(1, reps - 1))];
                SweepPoint& pt = pts[pick];
                ModelSpec m;
                m.strains = {t1, t2};
                m.s0 = pt.s0;
                sim::SimConfig cfg = *opt.sim;
                auto init = sim::InitialData::defaults(m, cfg.grid);
                auto snaps = sim::run(m, cfg, init);
                const auto& last = snaps.back();
                const double dd = init.bumps[0].half_width + 10.0 * cfg.grid.dx();
                // wake average over the inner half of the domain; the caller's
                // template must give the fronts time to clear it
                pt.s_infinity_measured = metrics::measure_s_infinity(
                    last, cfg.grid, dd, cfg.grid.half_length / 2.0);
            }
        }
    }

    res.all_agree_outside_gap =
        std::all_of(pts.begin(), pts.end(), [](const SweepPoint& p) { return p.agree; });
    res.points = std::move(pts);
    return res;
}

std::vector<Corollary2Sample> sample_corollary2(std::uint64_t seed, int count,
                                                int max_trials) {
    if (count < 1) throw ParamError("count must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> n_dist(2, 5);
    std::uniform_real_distribution<double> d_dist(0.3, 3.0);
    std::uniform_real_distribution<double> s0_dist(1.0, 4.0);
    std::uniform_real_distribution<double> a_dist(1.0, 4.0);
    std::uniform_real_distribution<double> th_frac(0.3, 0.7);
    std::uniform_real_distribution<double> a_shrink(0.08, 0.45);

    std::vector<Corollary2Sample> out;
    for (int trial = 0; trial < max_trials && static_cast<int>(out.size()) < count;
         ++trial) {
        const int n = n_dist(rng);
        const double d = d_dist(rng);
        ModelSpec m;
        m.s0 = s0_dist(rng);
        // Each strain's threshold is placed inside the wake of the one before,
        // so every front finds room to grow: a wake always undershoots its own
        // strain's threshold, which is why thresholds must shrink down the
        // chain. Rejection keeps the draws where the greedy order also clears
        // the speed-separation hypothesis.
        double level = m.s0;
        double a = a_dist(rng);
        for (int k = 0; k < n; ++k) {
            const StrainParams p{d, a, a * th_frac(rng) * level};
            m.strains.push_back(p);
            const auto rho = kinetics::asymptotic_value(p, level);
            if (!rho) break;
            level = kinetics::depleted_level(p, level, *rho);
            a *= a_shrink(rng);
        }
        if (static_cast<int>(m.strains.size()) < n) continue;
        const auto outc = seq::compute_sequence(m);
        if (outc.indices.size() >= 2 && outc.theorem_applicable)
            out.push_back({std::move(m), std::move(outc)});
    }
    if (static_cast<int>(out.size()) < count)
        throw NumericalError("cascade sampler exhausted its trial budget");
    return out;
}

VerifyReport verify_theorem1(const ModelSpec& m, const sim::SimConfig& cfg,
                             const sim::InitialData& init,
                             const metrics::MeasureSettings& ms, double tie_tol) {
    VerifyReport rep;
    rep.outcome = seq::compute_sequence(m, tie_tol);
    if (!rep.outcome.theorem_applicable) {
        rep.status = VerifyStatus::inapplicable;
        return rep;
    }
    auto snaps = sim::run(m, cfg, init);
    rep.front_report = metrics::compare_with_prediction(snaps, m, cfg.grid, init,
                                                        rep.outcome, ms);
    rep.status = rep.front_report->overall_pass ? VerifyStatus::pass
                                                : VerifyStatus::mismatch;
    return rep;
}

} // namespace experiments
} // namespace strainwave

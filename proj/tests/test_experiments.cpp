#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "strainwave/experiments.hpp"

using namespace strainwave;
namespace expt = strainwave::experiments;

TEST_CASE("reproduction-number counterexample, unit base strain at s0 = 2") {
    const auto sc = expt::build_corollary1(1.0, 1.0, 2.0);

    REQUIRE(sc.model.strains.size() == 2);
    CHECK(sc.model.strains[0].d == 1.0);
    CHECK(sc.model.strains[1].d == 1.0);
    CHECK(sc.model.s0 == 2.0);

    CHECK(sc.s1 == doctest::Approx(0.40637573995995991).epsilon(1e-13));
    CHECK(sc.lambda == doctest::Approx(1.7303884086418763).epsilon(1e-14));
    CHECK(sc.eps == 0.25);   // exact: the halving lands on a power of two
    CHECK(sc.model.strains[1].alpha == doctest::Approx(0.43259710216046907).epsilon(1e-14));
    CHECK(sc.model.strains[1].mu == 0.25);

    // the loser has the larger reproduction number
    CHECK(sc.r0_1 == 2.0);
    CHECK(sc.r0_2 == doctest::Approx(3.4607768172837525).epsilon(1e-14));
    CHECK(sc.r0_2 > sc.r0_1);
    CHECK(sc.r0_2 > 1.0);

    // both strains grow at s0, only strain 1 is ever selected
    CHECK(kinetics::speed(sc.model.strains[1], 2.0) > 0.0);
    CHECK(sc.outcome.indices == std::vector<int>{1});
    CHECK(sc.outcome.extinct == std::vector<int>{2});
    CHECK(sc.outcome.theorem_applicable);
    REQUIRE(sc.outcome.subcritical.size() == 1);
    CHECK(sc.outcome.subcritical[0].growth ==
          doctest::Approx(-0.074203032505005012).epsilon(1e-12));
}

TEST_CASE("counterexample construction needs a supercritical base strain") {
    CHECK_THROWS_AS(expt::build_corollary1(1.0, 1.0, 0.9), ParamError);
    CHECK_THROWS_AS(expt::build_corollary1(1.0, 1.0, 1.0), ParamError);
    CHECK_THROWS_AS(expt::build_corollary1(-1.0, 1.0, 2.0), ParamError);
}

namespace {
const StrainParams low_threshold{1.0, 2.0, 1.0};    // mu/alpha = 0.5
const StrainParams high_threshold{10.0, 1.0, 1.0};  // mu/alpha = 1.0
} // namespace

TEST_CASE("two-trait regime constants, canonical pair") {
    const auto c = expt::corollary3_constants(low_threshold, high_threshold);
    CHECK_FALSE(c.relabeled);
    CHECK(c.ratio == 10.0);
    CHECK(c.ratio_low == 2.0);
    CHECK(c.two_regime);
    CHECK(c.s_low == doctest::Approx(1.125).epsilon(1e-15));
    REQUIRE(c.eps.has_value());
    CHECK(*c.eps == doctest::Approx(1.875).epsilon(1e-15));
    CHECK(c.s_bar == doctest::Approx(1.7564312086261697).epsilon(1e-13));

    // defining property of s_bar: the fast trait's wake lands exactly on the
    // slow trait's growth threshold
    const auto rho2 = kinetics::asymptotic_value(high_threshold, c.s_bar);
    REQUIRE(rho2.has_value());
    CHECK(kinetics::depleted_level(high_threshold, c.s_bar, *rho2) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("threshold-reversed inputs are relabeled, same constants") {
    const auto c = expt::corollary3_constants(high_threshold, low_threshold);
    CHECK(c.relabeled);
    CHECK(c.ratio == 10.0);
    CHECK(c.s_low == doctest::Approx(1.125).epsilon(1e-15));
    REQUIRE(c.eps.has_value());
    CHECK(*c.eps == doctest::Approx(1.875).epsilon(1e-15));
}

TEST_CASE("equal thresholds are rejected; small diffusion gap drops eps") {
    CHECK_THROWS_AS(expt::corollary3_constants(low_threshold, {10.0, 2.0, 1.0}),
                    ParamError);

    // d2*alpha2 = 3 <= 4*d1*alpha1 = 8: no gap width, but still two regimes
    const auto c = expt::corollary3_constants(low_threshold, {3.0, 1.0, 1.0});
    CHECK_FALSE(c.eps.has_value());
    CHECK(c.two_regime);
    CHECK(c.s_low == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("gap narrows as the diffusivity contrast grows") {
    const double want_s_low[] = {1.0102040816326531, 1.0010020040080161, 1.0001000200040008};
    const double want_eps[] = {0.033274179236911268, 0.0030302540564960566,
                               0.00030030025220426519};
    double prev_s_low = 2.0, prev_eps = 2.0;
    for (int j = 0; j < 3; ++j) {
        const double d2 = std::pow(10.0, j + 2);
        const auto c = expt::corollary3_constants(low_threshold, {d2, 1.0, 1.0});
        REQUIRE(c.eps.has_value());
        CHECK(c.s_low == doctest::Approx(want_s_low[j]).epsilon(1e-14));
        CHECK(*c.eps == doctest::Approx(want_eps[j]).epsilon(1e-13));
        CHECK(c.s_low < prev_s_low);
        CHECK(*c.eps < prev_eps);
        prev_s_low = c.s_low;
        prev_eps = *c.eps;
    }
}

namespace {
const expt::SweepPoint& nearest(const std::vector<expt::SweepPoint>& pts, double s0) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (std::fabs(pts[i].s0 - s0) < std::fabs(pts[best].s0 - s0)) best = i;
    return pts[best];
}
} // namespace

TEST_CASE("regime sweep agrees with the recursion outside the gap") {
    expt::SweepOptions opt;
    opt.points = 200;
    opt.jobs = 2;
    const auto sw = expt::sweep_corollary3(low_threshold, high_threshold, 0.05, 4.0, opt);

    CHECK(sw.all_agree_outside_gap);
    CHECK(sw.constants.s_low == doctest::Approx(1.125).epsilon(1e-15));
    REQUIRE(sw.points.size() >= 200);
    for (std::size_t i = 1; i < sw.points.size(); ++i)
        CHECK(sw.points[i].s0 > sw.points[i - 1].s0);
    for (const auto& pt : sw.points)
        if (!pt.in_gap) CHECK(pt.agree);

    // spot-check the four bands; the gap [1.125, 3.0] swallows s_bar = 1.756,
    // so everything above it goes straight to the fast trait alone
    CHECK(nearest(sw.points, 0.4).closed_form == expt::Regime::no_epidemic);
    CHECK(nearest(sw.points, 0.8).closed_form == expt::Regime::only_1);
    CHECK(nearest(sw.points, 1.5).in_gap);
    CHECK(nearest(sw.points, 3.5).closed_form == expt::Regime::only_2);
    CHECK(nearest(sw.points, 0.8).structural == expt::Regime::only_1);
    CHECK(nearest(sw.points, 3.5).structural == expt::Regime::only_2);
}

TEST_CASE("random equal-diffusivity cascades: deterministic, applicable, monotone") {
    const auto batch = expt::sample_corollary2(42, 12);
    REQUIRE(batch.size() == 12);
    for (const auto& s : batch) {
        REQUIRE(s.model.strains.size() >= 2);
        const double d0 = s.model.strains[0].d;
        for (const auto& p : s.model.strains) CHECK(p.d == d0);
        CHECK(s.outcome.indices.size() >= 2);
        CHECK(s.outcome.theorem_applicable);
        const auto chains = seq::cascade_monotonicity(s.model, s.outcome);
        CHECK(chains.alpha_strictly_decreasing);
        CHECK(chains.mu_strictly_decreasing);
    }

    const auto again = expt::sample_corollary2(42, 12);
    REQUIRE(again.size() == batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        CHECK(again[i].model.s0 == batch[i].model.s0);
        REQUIRE(again[i].model.strains.size() == batch[i].model.strains.size());
        for (std::size_t k = 0; k < batch[i].model.strains.size(); ++k) {
            CHECK(again[i].model.strains[k].alpha == batch[i].model.strains[k].alpha);
            CHECK(again[i].model.strains[k].mu == batch[i].model.strains[k].mu);
        }
    }

    const auto other = expt::sample_corollary2(43, 1);
    CHECK(other[0].model.strains[0].alpha != batch[0].model.strains[0].alpha);
}

TEST_CASE("full verification pipeline on a clean two-strain model") {
    ModelSpec m;
    m.strains = {{1.0, 1.0, 1.0}, {1.0, 0.1, 1.0}};
    m.s0 = 2.0;
    sim::SimConfig cfg;
    cfg.grid.half_length = 120.0;
    cfg.grid.n_cells = 960;
    cfg.t_end = 40.0;
    cfg.snapshot_interval = 2.0;
    const auto init = sim::InitialData::defaults(m, cfg.grid);
    metrics::MeasureSettings ms;
    ms.burn_in = 15.0;

    const auto rep = expt::verify_theorem1(m, cfg, init, ms);
    CHECK(rep.status == expt::VerifyStatus::pass);
    CHECK(rep.outcome.theorem_applicable);
    REQUIRE(rep.front_report.has_value());
    CHECK(rep.front_report->overall_pass);

    // absurdly tight speed tolerances turn the same run into a mismatch
    metrics::MeasureSettings tight = ms;
    tight.speed_tol_lo = 1e-9;
    tight.speed_tol_hi = 1e-9;
    const auto bad = expt::verify_theorem1(m, cfg, init, tight);
    CHECK(bad.status == expt::VerifyStatus::mismatch);
    REQUIRE(bad.front_report.has_value());
    CHECK_FALSE(bad.front_report->overall_pass);
}

TEST_CASE("a tied model is reported inapplicable, nothing simulated") {
    ModelSpec m;
    m.strains = {{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}};
    m.s0 = 2.0;
    sim::SimConfig cfg;
    cfg.grid.half_length = 50.0;
    cfg.grid.n_cells = 200;
    cfg.t_end = 5.0;
    const auto init = sim::InitialData::defaults(m, cfg.grid);

    const auto rep = expt::verify_theorem1(m, cfg, init, {});
    CHECK(rep.status == expt::VerifyStatus::inapplicable);
    CHECK_FALSE(rep.front_report.has_value());
    CHECK_FALSE(rep.outcome.ties.empty());
}

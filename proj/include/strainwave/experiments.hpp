#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strainwave/metrics.hpp"

namespace strainwave {
namespace experiments {

// Two-strain counterexample to "higher basic reproduction number wins":
// given strain 1 and s0 with alpha1*s0/mu1 > 1, construct strain 2 with a
// larger reproduction number that still dies out.  lambda is the midpoint of
// the admissible interval (alpha1/mu1, 1/S1); eps is the largest of
// 1, 1/2, 1/4, ... with eps*(lambda*s0 - 1) < alpha1*s0 - mu1; strain 2 is
// (d=1, alpha=eps*lambda, mu=eps).
struct Corollary1Scenario {
    ModelSpec model;         // [strain1, strain2], d1 = d2 = 1
    double lambda = 0.0;
    double eps = 0.0;
    double s1 = 0.0;         // depleted level behind strain 1
    double r0_1 = 0.0;
    double r0_2 = 0.0;       // > r0_1 by construction
    seq::PropagationOutcome outcome;   // p = 1, k_1 = 1, applicable
};

Corollary1Scenario build_corollary1(double alpha1, double mu1, double s0);

// Closed-form regime machinery for the two-trait family with
// mu1/alpha1 < mu2/alpha2 (trait 1 = lower threshold, trait 2 = higher
// threshold; callers' strains are swapped if given the other way round).
struct Corollary3Constants {
    bool relabeled = false;      // inputs arrived threshold-reversed
    double ratio = 0.0;          // d2/d1
    double ratio_low = 0.0;      // alpha1/alpha2; below it trait 1 always wins
    bool two_regime = false;     // ratio > ratio_low
    double s_low = 0.0;          // speed-crossing level (valid when two_regime)
    double s_bar = 0.0;          // depletion boundary: S1(s_bar) = mu1/alpha1
    std::optional<double> eps;   // gap width; empty when d2*alpha2 <= 4*d1*alpha1
};

Corollary3Constants corollary3_constants(const StrainParams& trait1,
                                         const StrainParams& trait2);

// no-epidemic: p=0 | only-1: p=1,k=(1) | two-then-one: p=2,k=(2,1)
// | only-2: p=1,k=(2) | gap: closed form declines to commit
enum class Regime { no_epidemic, only_1, two_then_one, only_2, gap, other };
std::string regime_name(Regime r);

struct SweepPoint {
    double s0 = 0.0;
    Regime closed_form = Regime::other;
    Regime structural = Regime::other;   // from compute_sequence
    bool in_gap = false;
    bool agree = false;       // checked outside the gap only
    int p = 0;
    std::vector<int> indices;
    double s_infinity = 0.0;
    std::optional<double> s_infinity_measured;   // simulation-backed points only
};

struct SweepOptions {
    int points = 200;
    bool refine = true;            // 5x local density around label changes
    int simulate_per_regime = 0;   // <= 5
    int jobs = 1;
    std::optional<sim::SimConfig> sim;   // template for simulated points
    double tie_tol = 1e-9;
};

struct SweepResult {
    StrainParams trait1, trait2;   // in threshold order (after any relabel)
    Corollary3Constants constants;
    std::vector<SweepPoint> points;   // ascending s0
    bool all_agree_outside_gap = false;
};

// Sweep s0 over [s0_lo, s0_hi]: label each point by the closed-form regime
// map and by the brute-force selection recursion, check agreement outside
// the gap band, optionally refine near label changes and simulate a few
// representatives per structural regime.
SweepResult sweep_corollary3(const StrainParams& trait1, const StrainParams& trait2,
                             double s0_lo, double s0_hi, const SweepOptions& opt = {});

// Random equal-diffusivity communities whose outcome selects p >= 2 fronts
// with the hypotheses passing; used to exercise the monotone-cascade claim.
struct Corollary2Sample {
    ModelSpec model;
    seq::PropagationOutcome outcome;
};
std::vector<Corollary2Sample> sample_corollary2(std::uint64_t seed, int count,
                                                int max_trials = 500000);

// End-to-end check of the front-cascade prediction: analyze, simulate,
// measure, compare.
enum class VerifyStatus { inapplicable, pass, mismatch };
struct VerifyReport {
    seq::PropagationOutcome outcome;
    VerifyStatus status = VerifyStatus::inapplicable;
    std::optional<metrics::FrontReport> front_report;
};
VerifyReport verify_theorem1(const ModelSpec& m, const sim::SimConfig& cfg,
                             const sim::InitialData& init,
                             const metrics::MeasureSettings& ms, double tie_tol = 1e-9);

} // namespace experiments
} // namespace strainwave

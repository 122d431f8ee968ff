#pragma once
#include <vector>

#include "strainwave/kinetics.hpp"

namespace strainwave {

// A community of strains competing for one susceptible pool.
// Strains are numbered from 1 in every interface of this library; vectors of
// per-strain data are ordered by that id.
struct ModelSpec {
    std::vector<StrainParams> strains;
    double s0 = 1.0;
};

void validate(const ModelSpec& m);

namespace seq {

// One term of the speed-separation requirement at step i (1-based):
// every strain k not yet selected must satisfy
//   c_k(S_{i-1}) + c_k(S_i) < c_i.
struct SeparationTerm {
    int step = 0;       // 1-based
    int strain = 0;     // 1-based
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;   // (rhs - lhs)/rhs
    bool pass = false;
};

// Strain k left over at the end must decay in the final wake:
//   alpha_k * S_p - mu_k < 0.
struct SubcriticalTerm {
    int strain = 0;     // 1-based
    double growth = 0.0;   // alpha_k*S_p - mu_k
    double margin = 0.0;   // -growth/mu_k
    bool pass = false;
};

// Near-equal maximal speeds at one selection step.
struct TieRecord {
    int step = 0;                // 1-based
    std::vector<int> strains;    // tied candidates, ascending, 1-based
    double rel_gap = 0.0;        // smallest (cmax - c)/cmax among the tied
};

struct PropagationOutcome {
    std::vector<int> indices;      // selected strains k_1..k_p, 1-based
    std::vector<double> speeds;    // c_i = speed of k_i at S_{i-1}; strictly decreasing
    std::vector<double> values;    // rho_i deposited by front i
    std::vector<double> levels;    // S_0..S_p; strictly decreasing
    double s_infinity = 0.0;       // = levels.back()
    std::vector<int> extinct;      // strains never selected, ascending, 1-based

    std::vector<SeparationTerm> separation;
    std::vector<SubcriticalTerm> subcritical;
    std::vector<TieRecord> ties;
    bool hyp_separation = true;    // vacuously true when p <= 1
    bool hyp_subcritical = true;   // vacuously true when p = N
    bool theorem_applicable = false;
};

// Greedy front-selection recursion: at each step pick the unselected strain
// with the largest strictly positive speed at the current susceptible level,
// deposit its rho, deplete the level, repeat until no strain can grow.
// Near-ties (relative speed gap <= tie_tol) are recorded, void
// theorem_applicable, and the recursion continues with the lowest-index
// maximizer.  tie_tol must lie in [0, 1e-2].
PropagationOutcome compute_sequence(const ModelSpec& m, double tie_tol = 1e-9);

// The two hypothesis checks, re-usable on their own.  Both return the term
// lists they would attach to the outcome.
std::vector<SeparationTerm> check_speed_separation(const ModelSpec& m,
                                                   const std::vector<int>& indices,
                                                   const std::vector<double>& levels);
std::vector<SubcriticalTerm> check_subcriticality(const ModelSpec& m,
                                                  const std::vector<int>& extinct,
                                                  double s_p);

// Along an applicable selection order with equal diffusivities, both alpha
// and mu decrease strictly.  Requires equal d and theorem_applicable
// (ContractError otherwise).
struct CascadeChains {
    std::vector<double> alpha_chain;
    std::vector<double> mu_chain;
    bool alpha_strictly_decreasing = false;
    bool mu_strictly_decreasing = false;
};
CascadeChains cascade_monotonicity(const ModelSpec& m, const PropagationOutcome& out);

} // namespace seq
} // namespace strainwave

#pragma once
#include <optional>

#include "strainwave/errors.hpp"

namespace strainwave {

// One pathogen variant: diffusivity d, transmission rate alpha, recovery
// rate mu.  All three strictly positive and finite.
struct StrainParams {
    double d = 1.0;
    double alpha = 1.0;
    double mu = 1.0;
};

// Throws ParamError if any field is non-finite or not strictly positive.
void validate(const StrainParams& p);

// Throws ParamError unless sigma is finite and >= 0.
void validate_level(double sigma);

namespace kinetics {

// Invasion speed into a susceptible background at level sigma:
//   c = 2*sqrt(d*(alpha*sigma - mu))  if alpha*sigma - mu >= 0, else 0.
// Continuous and nondecreasing in sigma; equals 0 at the threshold.
double speed(const StrainParams& p, double sigma);

// Growth profile of the cumulative infection pressure:
//   f(rho, sigma) = sigma*mu*(1 - exp(-(alpha/mu)*rho)) - mu*rho.
// Concave in rho, f(0, sigma) = 0, slope at 0 is alpha*sigma - mu.
double reaction(const StrainParams& p, double rho, double sigma);

// Unique positive root of reaction(., sigma), which exists iff
// alpha*sigma/mu > 1; nullopt otherwise (including exact threshold).
std::optional<double> asymptotic_value(const StrainParams& p, double sigma);

// Susceptible level left behind a front that deposited rho:
//   sigma * exp(-(alpha/mu)*rho).
double depleted_level(const StrainParams& p, double sigma, double rho);

// alpha*s0/mu.
double basic_reproduction_number(const StrainParams& p, double s0);

// Final susceptible level of the spatially homogeneous single-strain model:
// the smallest z with z - (mu/alpha)*ln z = s0 - (mu/alpha)*ln s0.
// Returns s0 itself when alpha*s0/mu <= 1.  Deliberately solved through the
// conserved quantity, not through asymptotic_value, so the two routes can
// cross-check each other.
double final_susceptible_single(const StrainParams& p, double s0);

} // namespace kinetics
} // namespace strainwave

#include "strainwave/kinetics.hpp"

#include <cmath>
#include <cstdio>

#include "strainwave/rootfind.hpp"

namespace strainwave {

void validate(const StrainParams& p) {
    auto bad = [](double v) { return !std::isfinite(v) || v <= 0.0; };
    if (bad(p.d) || bad(p.alpha) || bad(p.mu)) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "strain parameters must be finite and > 0 (d=%g, alpha=%g, mu=%g)",
                      p.d, p.alpha, p.mu);
        throw ParamError(buf);
    }
}

void validate_level(double sigma) {
    if (!std::isfinite(sigma) || sigma < 0.0) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "susceptible level must be finite and >= 0 (got %g)", sigma);
        throw ParamError(buf);
    }
}

namespace kinetics {

double speed(const StrainParams& p, double sigma) {
    validate(p);
    validate_level(sigma);
    const double excess = p.alpha * sigma - p.mu;
    return excess > 0.0 ? 2.0 * std::sqrt(p.d * excess) : 0.0;
}

double reaction(const StrainParams& p, double rho, double sigma) {
    validate(p);
    validate_level(sigma);
    if (!std::isfinite(rho) || rho < 0.0)
        throw ParamError("reaction: rho must be finite and >= 0");
    // expm1 keeps the small-rho regime accurate where 1-exp(..) cancels
    return -sigma * p.mu * std::expm1(-(p.alpha / p.mu) * rho) - p.mu * rho;
}

std::optional<double> asymptotic_value(const StrainParams& p, double sigma) {
    validate(p);
    validate_level(sigma);
    if (p.alpha * sigma <= p.mu) return std::nullopt;

    const double a_over_m = p.alpha / p.mu;
    auto f = [&](double r) { return -sigma * p.mu * std::expm1(-a_over_m * r) - p.mu * r; };
    auto fp = [&](double r) { return sigma * p.alpha * std::exp(-a_over_m * r) - p.mu; };

    // f > 0 just right of 0 and f(sigma) = -mu*sigma*exp(-a_over_m*sigma) < 0,
    // so [1e-12, sigma] brackets the root already; the doubling loop is a
    // guard against rounding at extreme parameter values.
    double lo = 1e-12;
    double hi = sigma;
    int doublings = 0;
    while (f(hi) >= 0.0) {
        hi *= 2.0;
        if (++doublings > 60) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "asymptotic value: no sign change up to %.17g (f=%.17g)", hi, f(hi));
            throw NumericalError(buf);
        }
    }
    return find_root(f, fp, lo, hi);
}

double depleted_level(const StrainParams& p, double sigma, double rho) {
    validate(p);
    validate_level(sigma);
    if (!std::isfinite(rho) || rho < 0.0)
        throw ParamError("depleted_level: rho must be finite and >= 0");
    return sigma * std::exp(-(p.alpha / p.mu) * rho);
}

double basic_reproduction_number(const StrainParams& p, double s0) {
    validate(p);
    validate_level(s0);
    return p.alpha * s0 / p.mu;
}

double final_susceptible_single(const StrainParams& p, double s0) {
    validate(p);
    validate_level(s0);
    if (p.alpha * s0 <= p.mu) return s0;

    const double m = p.mu / p.alpha;                    // minimum of z - m*ln z
    const double level = s0 - m * std::log(s0);
    auto g = [&](double z) { return z - m * std::log(z) - level; };
    auto gp = [&](double z) { return 1.0 - m / z; };

    // g decreases on (0, m) from +inf to its minimum, so the smallest
    // solution sits left of m; walk lo down until g turns positive.
    double hi = m;
    double lo = 0.5 * m;
    int halvings = 0;
    while (g(lo) <= 0.0) {
        lo *= 0.5;
        if (++halvings > 1100)
            throw NumericalError("final susceptible level: lower bracket underflowed");
    }
    return find_root(g, gp, lo, hi);
}

} // namespace kinetics
} // namespace strainwave

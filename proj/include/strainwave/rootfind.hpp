#pragma once
#include <cmath>
#include <cstdio>
#include <functional>

#include "strainwave/errors.hpp"

namespace strainwave {

struct RootOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-13;
    int max_iter = 200;
};

// Safeguarded Newton on a bracket [lo, hi] with f(lo) and f(hi) of opposite
// sign.  Newton steps that leave the bracket, or fail to shrink it fast
// enough, fall back to bisection, so the bracket is maintained throughout.
// Converges when the bracket width or the Newton step drops below
// abs_tol + rel_tol*|x|.  Throws NumericalError carrying the bracket state
// if the iteration cap is hit.
template <class F, class DF>
double find_root(F&& f, DF&& df, double lo, double hi, RootOptions opt = {}) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi) || std::isnan(flo) || std::isnan(fhi)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "root bracket invalid: f(%.17g)=%.17g, f(%.17g)=%.17g",
                      lo, flo, hi, fhi);
        throw NumericalError(buf);
    }

    double x = 0.5 * (lo + hi);
    for (int it = 0; it < opt.max_iter; ++it) {
        double fx = f(x);
        if (fx == 0.0) return x;
        // shrink the bracket around the sign change
        if (std::signbit(fx) == std::signbit(flo)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        double width = hi - lo;
        if (width <= opt.abs_tol + opt.rel_tol * std::fabs(x))
            return 0.5 * (lo + hi);

        double slope = df(x);
        double xn = x - fx / slope;
        if (std::isfinite(xn) && xn > lo && xn < hi) {
            double step = std::fabs(xn - x);
            x = xn;
            if (step <= opt.abs_tol + opt.rel_tol * std::fabs(x)) {
                // confirm: one more sign sort keeps the answer inside the bracket
                return x;
            }
        } else {
            x = 0.5 * (lo + hi);
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "root finder hit iteration cap (%d): bracket [%.17g, %.17g], "
                  "f=[%.17g, %.17g]",
                  opt.max_iter, lo, hi, flo, fhi);
    throw NumericalError(buf);
}

} // namespace strainwave

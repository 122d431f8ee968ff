#pragma once
#include <optional>
#include <vector>

#include "strainwave/sim.hpp"

namespace strainwave {
namespace metrics {

// Rightmost level crossings of R_k over time.  extinct means the level was
// never crossed after burn-in (a legitimate outcome, not an error).
struct FrontTrack {
    int strain = 0;       // 1-based
    double level = 0.0;
    std::vector<double> t;
    std::vector<double> x;
    bool extinct = false;
};

struct FrontFit {
    double speed = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int n_points = 0;
};

// Crossing positions of R_k (strain id, 1-based) at the given level, using
// snapshots with t >= burn_in.  Positions come from linear interpolation
// between the last cell at or above the level and its right neighbour, and
// are nondecreasing in time.  Throws InsufficientDataError when crossings
// exist but fewer than 6, ParamError for a non-positive level.
FrontTrack track_front(const std::vector<sim::Snapshot>& snaps, const sim::Grid& g,
                       int strain, double level, double burn_in);

// Least-squares line through (t, x); needs >= 6 points.
FrontFit fit_front_speed(const FrontTrack& track);

// Mean of R_k (strain id) over cells with |x| in [x_lo, x_hi] at the given
// snapshot.  InsufficientDataError when the window holds no cell.
double plateau_value(const sim::Snapshot& snap, const sim::Grid& g, int strain,
                     double x_lo, double x_hi);

// Mean of S over the same kind of window.
double measure_s_infinity(const sim::Snapshot& snap, const sim::Grid& g,
                          double x_lo, double x_hi);

// Exponential envelope test:
//   I_k(t, x) <= A * exp(-q*(|x| - (c+eps)*t)),  q = (c+eps)/(2*d_k),
// with A = fit_factor * (tightest constant at the burn-in snapshot).
// Checked in log space at every snapshot after burn-in.
struct EnvelopeResult {
    bool pass = false;
    double a_fitted = 0.0;           // includes fit_factor
    double worst_log_excess = 0.0;   // max of log(I) - log(bound); <= 0 passes
    double worst_t = 0.0;
    double worst_x = 0.0;
};
EnvelopeResult envelope_check(const std::vector<sim::Snapshot>& snaps, const sim::Grid& g,
                              int strain, double c, double d, double eps, double burn_in,
                              double fit_factor = 10.0);

// Tolerances and windows for comparing a simulation against the predicted
// front cascade.
struct MeasureSettings {
    double burn_in = 0.0;
    double level_fraction = 0.5;     // crossing level as a fraction of the plateau
    double plateau_margin = 0.2;     // trim this fraction of the front position
    std::optional<double> delta;     // inner window edge; default: seed radius + 10*dx
    double speed_tol_lo = 0.05;      // fronts converge from below, so -5% ...
    double speed_tol_hi = 0.02;      // ... but only +2%
    double value_tol = 0.02;
    double extinct_sup_rel = 1e-4;   // sup I < this * seed amplitude => extinct
    double envelope_eps = 0.05;
    double envelope_fit = 10.0;
};

struct StrainReport {
    int strain = 0;                  // 1-based
    bool predicted_propagates = false;
    double c_pred = 0.0;             // 0 for predicted-extinct strains
    double rho_pred = 0.0;
    bool measured_propagates = false;
    double c_meas = 0.0;
    double rho_meas = 0.0;
    double front_position = 0.0;     // at t_end
    double wake_x_lo = 0.0;          // window used for the wake average
    double wake_x_hi = 0.0;
    double speed_rel_err = 0.0;      // (c_meas - c_pred)/c_pred
    double value_rel_err = 0.0;
    bool speed_ok = false;
    bool value_ok = false;
    bool partition_ok = false;       // measured propagate/extinct matches prediction
    std::optional<EnvelopeResult> envelope;   // filled for predicted-extinct strains
};

struct FrontReport {
    std::vector<StrainReport> rows;   // ordered by strain id
    double s_inf_pred = 0.0;
    double s_inf_meas = 0.0;
    double s_inf_rel_err = 0.0;
    bool s_inf_ok = false;
    bool partition_ok = false;
    bool overall_pass = false;
};

// Measure every strain in the snapshots and compare against the predicted
// outcome.  Plateau levels use a two-pass estimate (rough level = half the
// running max, then half the measured plateau).  Envelope checks run for
// predicted-extinct strains at their wake speed c_k(S_p).
FrontReport compare_with_prediction(const std::vector<sim::Snapshot>& snaps,
                                    const ModelSpec& m, const sim::Grid& g,
                                    const sim::InitialData& init,
                                    const seq::PropagationOutcome& outcome,
                                    const MeasureSettings& ms);

} // namespace metrics
} // namespace strainwave

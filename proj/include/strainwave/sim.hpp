#pragma once
#include <cstdint>
#include <functional>
#include <vector>

#include "strainwave/sequence.hpp"

namespace strainwave {
namespace sim {

// Uniform cell-centered grid on [-L, L] with reflecting (zero-flux) ends.
struct Grid {
    double half_length = 100.0;   // L
    int n_cells = 800;            // even, >= 64
    double dx() const { return 2.0 * half_length / n_cells; }
    double x(int i) const { return -half_length + (i + 0.5) * dx(); }
};

void validate(const Grid& g);

enum class BumpShape { plateau, cosine };

// Compactly supported seed for one strain; support must sit strictly
// inside [-L/4, L/4].
struct Bump {
    double center = 0.0;
    double half_width = 0.0;
    double amplitude = 0.0;
    BumpShape shape = BumpShape::plateau;
};

// S starts at the constant s0, R at zero; one bump per strain (amplitude 0
// allowed for strains seeded with nothing).
struct InitialData {
    std::vector<Bump> bumps;   // size N

    // Spec'd default seed: centered plateau, amplitude 1e-3*s0, half-width
    // 10*dx, identical for every strain.
    static InitialData defaults(const ModelSpec& m, const Grid& g);
};

void validate(const InitialData& init, const ModelSpec& m, const Grid& g);

enum class Scheme { explicit_euler, strang_split };

struct SimConfig {
    Grid grid;
    double theta_cfl = 0.9;          // in (0, 1]
    double t_end = 10.0;
    double snapshot_interval = 1.0;  // target spacing of stored snapshots
    Scheme scheme = Scheme::explicit_euler;
    // front-arrival proxy for the boundary guard, relative to s0
    double guard_level_rel = 1e-6;
};

void validate(const SimConfig& c);

// Time step actually used: min(theta*dx^2/(2*max_k d_k),
// 0.1/max_k max(alpha_k*s0, mu_k)), then shrunk so t_end is hit exactly.
double choose_dt(const SimConfig& c, const ModelSpec& m);

struct Diagnostics {
    std::size_t step = 0;
    double identity_residual = 0.0;   // max |S - s0*prod_k exp(-(a_k/m_k) R_k)|
    double mass = 0.0;                // dx * sum (S + sum_k (I_k + R_k))
    double s_min = 0.0, s_max = 0.0;
    std::vector<double> i_max;        // per strain
    std::vector<double> r_max;        // per strain
    long clamp_count = 0;             // cumulative since t=0
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> S;
    std::vector<std::vector<double>> I;   // [strain][cell]
    std::vector<std::vector<double>> R;
    Diagnostics diag;
};

// Mutable integration state; step() advances it by one dt.
struct SimState {
    double t = 0.0;
    std::size_t step_index = 0;
    long clamp_count = 0;
    std::vector<double> S;
    std::vector<std::vector<double>> I;
    std::vector<std::vector<double>> R;

    static SimState from_initial(const ModelSpec& m, const Grid& g, const InitialData& init);
};

// One step of the chosen scheme.  Clamps round-off negatives in I (down to
// -1e-14) to zero and counts them; anything more negative is an integrity
// error.  Does not scan for NaN (run() does, periodically).
void step(SimState& st, const ModelSpec& m, const SimConfig& c, double dt);

using SnapshotSink = std::function<void(const Snapshot&)>;

// Integrate to t_end, emitting snapshots (t=0, roughly every
// snapshot_interval, and t_end) to the sink.  Periodically scans fields for
// NaN/Inf (DivergenceError), checks invariants (IntegrityError), and aborts
// with DomainTooSmallError naming the strain whose front entered the 10*dx
// sentinel band at either boundary.
void run(const ModelSpec& m, const SimConfig& c, const InitialData& init,
         const SnapshotSink& sink);

// Convenience overload collecting all snapshots.
std::vector<Snapshot> run(const ModelSpec& m, const SimConfig& c, const InitialData& init);

// Spatially homogeneous single-strain reference: fixed-step RK4 on
//   S' = -alpha*S*I,  I' = (alpha*S - mu)*I,  R' = mu*I.
// S+I+R is a linear invariant, so RK4 conserves it to round-off.
struct OdeTrajectory {
    std::vector<double> t, S, I, R;
};
OdeTrajectory run_ode_reference(const StrainParams& p, double s0, double i0,
                                double t_end, double dt, int sample_stride = 1);

} // namespace sim
} // namespace strainwave

#include "strainwave/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace strainwave {
namespace sim {

void validate(const Grid& g) {
    if (!std::isfinite(g.half_length) || g.half_length <= 0.0)
        throw ParamError("grid.half_length must be finite and > 0");
    if (g.n_cells < 64 || g.n_cells % 2 != 0)
        throw ParamError("grid.n_cells must be an even integer >= 64");
}

InitialData InitialData::defaults(const ModelSpec& m, const Grid& g) {
    InitialData init;
    Bump b;
    b.center = 0.0;
    b.half_width = 10.0 * g.dx();
    b.amplitude = 1e-3 * m.s0;
    b.shape = BumpShape::plateau;
    init.bumps.assign(m.strains.size(), b);
    return init;
}

void validate(const InitialData& init, const ModelSpec& m, const Grid& g) {
    if (init.bumps.size() != m.strains.size())
        throw ParamError("initial data needs exactly one bump per strain");
    bool any = false;
    for (std::size_t k = 0; k < init.bumps.size(); ++k) {
        const Bump& b = init.bumps[k];
        if (!std::isfinite(b.center) || !std::isfinite(b.half_width) ||
            !std::isfinite(b.amplitude) || b.amplitude < 0.0)
            throw ParamError("bump fields must be finite, amplitude >= 0");
        if (b.amplitude == 0.0) continue;
        any = true;
        if (b.half_width <= 0.0)
            throw ParamError("bump half_width must be > 0 where amplitude > 0");
        if (std::fabs(b.center) + b.half_width >= g.half_length / 4.0) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "bump for strain %zu must be supported strictly inside [-L/4, L/4]",
                          k + 1);
            throw ParamError(buf);
        }
    }
    if (!any) throw ParamError("at least one strain needs a positive seed amplitude");
}

void validate(const SimConfig& c) {
    validate(c.grid);
    if (!(c.theta_cfl > 0.0) || c.theta_cfl > 1.0)
        throw ParamError("theta_cfl must lie in (0, 1]");
    if (!std::isfinite(c.t_end) || c.t_end <= 0.0)
        throw ParamError("t_end must be finite and > 0");
    if (!std::isfinite(c.snapshot_interval) || c.snapshot_interval <= 0.0)
        throw ParamError("snapshot_interval must be finite and > 0");
    if (!std::isfinite(c.guard_level_rel) || c.guard_level_rel <= 0.0)
        throw ParamError("guard_level_rel must be finite and > 0");
}

double choose_dt(const SimConfig& c, const ModelSpec& m) {
    double dmax = 0.0, rate_max = 0.0;
    for (const auto& s : m.strains) {
        dmax = std::max(dmax, s.d);
        rate_max = std::max({rate_max, s.alpha * m.s0, s.mu});
    }
    const double dx = c.grid.dx();
    double dt = std::min(c.theta_cfl * dx * dx / (2.0 * dmax), 0.1 / rate_max);
    const auto n_steps = static_cast<std::size_t>(std::ceil(c.t_end / dt - 1e-9));
    return c.t_end / static_cast<double>(n_steps);
}

SimState SimState::from_initial(const ModelSpec& m, const Grid& g, const InitialData& init) {
    const int n = g.n_cells;
    const std::size_t nk = m.strains.size();
    SimState st;
    st.S.assign(n, m.s0);
    st.I.assign(nk, std::vector<double>(n, 0.0));
    st.R.assign(nk, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < nk; ++k) {
        const Bump& b = init.bumps[k];
        if (b.amplitude == 0.0) continue;
        for (int i = 0; i < n; ++i) {
            const double xi = (g.x(i) - b.center) / b.half_width;
            if (std::fabs(xi) > 1.0) continue;
            double v = b.amplitude;
            if (b.shape == BumpShape::cosine) {
                const double cterm = std::cos(0.5 * M_PI * xi);
                v *= cterm * cterm;
            }
            st.I[k][i] = v;
        }
    }
    return st;
}

namespace {

// clamp policy shared by both schemes: tiny round-off negatives go to zero,
// real negatives are a broken scheme
inline void clamp_cell(double& v, long& clamps, std::size_t step_index) {
    if (v < 0.0) {
        if (v < -1e-14) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "positivity of I broke (value %.3e)", v);
            throw IntegrityError(buf, step_index);
        }
        v = 0.0;
        ++clamps;
    }
}

void euler_step(SimState& st, const ModelSpec& m, const SimConfig& c, double dt,
                std::vector<std::vector<double>>& i_next) {
    const int n = c.grid.n_cells;
    const double dx = c.grid.dx();
    const double inv_dx2 = 1.0 / (dx * dx);
    const std::size_t nk = m.strains.size();

    for (std::size_t k = 0; k < nk; ++k) {
        const double dk = m.strains[k].d;
        const double ak = m.strains[k].alpha;
        const double mk = m.strains[k].mu;
        const double* I = st.I[k].data();
        const double* S = st.S.data();
        double* out = i_next[k].data();
        for (int i = 0; i < n; ++i) {
            const double left = I[i > 0 ? i - 1 : 0];
            const double right = I[i < n - 1 ? i + 1 : n - 1];
            const double lap = (left - 2.0 * I[i] + right) * inv_dx2;
            double v = I[i] + dt * (dk * lap + (ak * S[i] - mk) * I[i]);
            clamp_cell(v, st.clamp_count, st.step_index);
            out[i] = v;
        }
    }
    // S and R consume the pre-step I fields
    for (int i = 0; i < n; ++i) {
        double pressure = 0.0;
        for (std::size_t k = 0; k < nk; ++k)
            pressure += m.strains[k].alpha * st.I[k][i];
        st.S[i] -= dt * st.S[i] * pressure;
    }
    for (std::size_t k = 0; k < nk; ++k) {
        const double mk = m.strains[k].mu;
        double* R = st.R[k].data();
        const double* I = st.I[k].data();
        for (int i = 0; i < n; ++i) R[i] += dt * mk * I[i];
    }
    st.I.swap(i_next);
}

// Pointwise kinetics over h with S frozen per cell: I_k scales by
// exp((a_k*S - m_k)h); R_k gains the exact integral of mu*I under that
// freeze; S then applies the exponential-product identity to the step's
// R increments.
void kinetics_half_step(SimState& st, const ModelSpec& m, int n, double h) {
    const std::size_t nk = m.strains.size();
    for (int i = 0; i < n; ++i) {
        const double s = st.S[i];
        double log_drop = 0.0;
        for (std::size_t k = 0; k < nk; ++k) {
            const double ak = m.strains[k].alpha;
            const double mk = m.strains[k].mu;
            const double r = ak * s - mk;
            const double i0 = st.I[k][i];
            const double grow = std::exp(r * h);
            const double dR = mk * i0 * (r != 0.0 ? std::expm1(r * h) / r : h);
            st.I[k][i] = i0 * grow;
            st.R[k][i] += dR;
            log_drop += (ak / mk) * dR;
        }
        st.S[i] = s * std::exp(-log_drop);
    }
}

void strang_step(SimState& st, const ModelSpec& m, const SimConfig& c, double dt,
                 std::vector<std::vector<double>>& i_next) {
    const int n = c.grid.n_cells;
    const double dx = c.grid.dx();
    const double inv_dx2 = 1.0 / (dx * dx);
    const std::size_t nk = m.strains.size();

    kinetics_half_step(st, m, n, 0.5 * dt);
    for (std::size_t k = 0; k < nk; ++k) {
        const double dk = m.strains[k].d;
        const double* I = st.I[k].data();
        double* out = i_next[k].data();
        for (int i = 0; i < n; ++i) {
            const double left = I[i > 0 ? i - 1 : 0];
            const double right = I[i < n - 1 ? i + 1 : n - 1];
            double v = I[i] + dt * dk * (left - 2.0 * I[i] + right) * inv_dx2;
            clamp_cell(v, st.clamp_count, st.step_index);
            out[i] = v;
        }
    }
    st.I.swap(i_next);
    kinetics_half_step(st, m, n, 0.5 * dt);
}

bool field_bad(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return true;
    return false;
}

void scan_fields(const SimState& st) {
    if (field_bad(st.S)) throw DivergenceError("NaN/Inf in S", st.step_index);
    for (std::size_t k = 0; k < st.I.size(); ++k) {
        if (field_bad(st.I[k]))
            throw DivergenceError("NaN/Inf in I_" + std::to_string(k + 1), st.step_index);
        if (field_bad(st.R[k]))
            throw DivergenceError("NaN/Inf in R_" + std::to_string(k + 1), st.step_index);
    }
}

void check_boundary_guard(const SimState& st, const ModelSpec& m, const SimConfig& c) {
    const int n = c.grid.n_cells;
    const int band = 10;
    const double guard = c.guard_level_rel * m.s0;
    for (std::size_t k = 0; k < st.I.size(); ++k) {
        for (int i = 0; i < band; ++i) {
            for (int j : {i, n - 1 - i}) {
                if (st.I[k][j] > guard) {
                    char buf[160];
                    std::snprintf(buf, sizeof buf,
                                  "front of strain %zu reached within 10*dx of the boundary "
                                  "(x=%.6g, t=%.6g); enlarge the domain",
                                  k + 1, c.grid.x(j), st.t);
                    throw DomainTooSmallError(buf, static_cast<int>(k + 1), st.t, c.grid.x(j));
                }
            }
        }
    }
}

Diagnostics diagnose(const SimState& st, const ModelSpec& m, const SimConfig& c) {
    const int n = c.grid.n_cells;
    const std::size_t nk = m.strains.size();
    Diagnostics d;
    d.step = st.step_index;
    d.clamp_count = st.clamp_count;
    d.s_min = d.s_max = st.S[0];
    d.i_max.assign(nk, 0.0);
    d.r_max.assign(nk, 0.0);
    double mass = 0.0;
    double resid = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = st.S[i];
        d.s_min = std::min(d.s_min, s);
        d.s_max = std::max(d.s_max, s);
        double cell_sum = s;
        double log_prod = 0.0;
        for (std::size_t k = 0; k < nk; ++k) {
            cell_sum += st.I[k][i] + st.R[k][i];
            log_prod += (m.strains[k].alpha / m.strains[k].mu) * st.R[k][i];
            d.i_max[k] = std::max(d.i_max[k], st.I[k][i]);
            d.r_max[k] = std::max(d.r_max[k], st.R[k][i]);
        }
        mass += cell_sum;
        resid = std::max(resid, std::fabs(s - m.s0 * std::exp(-log_prod)));
    }
    d.mass = mass * c.grid.dx();
    d.identity_residual = resid;
    return d;
}

Snapshot make_snapshot(const SimState& st, const ModelSpec& m, const SimConfig& c) {
    Snapshot snap;
    snap.t = st.t;
    snap.S = st.S;
    snap.I = st.I;
    snap.R = st.R;
    snap.diag = diagnose(st, m, c);
    return snap;
}

} // namespace

void step(SimState& st, const ModelSpec& m, const SimConfig& c, double dt) {
    static thread_local std::vector<std::vector<double>> scratch;
    scratch.assign(m.strains.size(), std::vector<double>(c.grid.n_cells));
    if (c.scheme == Scheme::explicit_euler)
        euler_step(st, m, c, dt, scratch);
    else
        strang_step(st, m, c, dt, scratch);
    ++st.step_index;
    st.t = static_cast<double>(st.step_index) * dt;
}

void run(const ModelSpec& m, const SimConfig& c, const InitialData& init,
         const SnapshotSink& sink) {
    validate(m);
    validate(c);
    validate(init, m, c.grid);

    const double dt = choose_dt(c, m);
    const auto n_steps = static_cast<std::size_t>(std::llround(c.t_end / dt));
    const auto stride = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(c.snapshot_interval / dt)));
    constexpr std::size_t scan_every = 250;

    SimState st = SimState::from_initial(m, c.grid, init);
    // reuse one scratch buffer across the whole run
    std::vector<std::vector<double>> scratch(m.strains.size(),
                                             std::vector<double>(c.grid.n_cells));
    sink(make_snapshot(st, m, c));
    for (std::size_t s = 1; s <= n_steps; ++s) {
        st.step_index = s;   // errors raised mid-step carry the step being computed
        if (c.scheme == Scheme::explicit_euler)
            euler_step(st, m, c, dt, scratch);
        else
            strang_step(st, m, c, dt, scratch);
        st.t = static_cast<double>(s) * dt;
        const bool snap_now = (s % stride == 0) || s == n_steps;
        if (snap_now || s % scan_every == 0) {
            scan_fields(st);
            check_boundary_guard(st, m, c);
        }
        if (snap_now) {
            Snapshot snap = make_snapshot(st, m, c);
            if (snap.diag.s_min < -1e-14 || snap.diag.s_max > m.s0 * (1.0 + 1e-12))
                throw IntegrityError("S left [0, s0] beyond tolerance", s);
            sink(snap);
        }
    }
}

std::vector<Snapshot> run(const ModelSpec& m, const SimConfig& c, const InitialData& init) {
    std::vector<Snapshot> snaps;
    run(m, c, init, [&](const Snapshot& s) { snaps.push_back(s); });
    return snaps;
}

OdeTrajectory run_ode_reference(const StrainParams& p, double s0, double i0,
                                double t_end, double dt, int sample_stride) {
    validate(p);
    validate_level(s0);
    if (!std::isfinite(i0) || i0 < 0.0) throw ParamError("i0 must be finite and >= 0");
    if (!std::isfinite(t_end) || t_end <= 0.0 || !std::isfinite(dt) || dt <= 0.0)
        throw ParamError("t_end and dt must be finite and > 0");
    if (sample_stride < 1) throw ParamError("sample_stride must be >= 1");

    const auto n = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    const double h = t_end / static_cast<double>(n);

    OdeTrajectory tr;
    double S = s0, I = i0, R = 0.0;
    auto push = [&](double t) {
        tr.t.push_back(t);
        tr.S.push_back(S);
        tr.I.push_back(I);
        tr.R.push_back(R);
    };
    push(0.0);
    auto fS = [&](double s, double i) { return -p.alpha * s * i; };
    auto fI = [&](double s, double i) { return (p.alpha * s - p.mu) * i; };
    auto fR = [&](double /*s*/, double i) { return p.mu * i; };
    for (std::size_t step = 1; step <= n; ++step) {
        const double k1s = fS(S, I), k1i = fI(S, I), k1r = fR(S, I);
        const double k2s = fS(S + 0.5 * h * k1s, I + 0.5 * h * k1i);
        const double k2i = fI(S + 0.5 * h * k1s, I + 0.5 * h * k1i);
        const double k2r = fR(S + 0.5 * h * k1s, I + 0.5 * h * k1i);
        const double k3s = fS(S + 0.5 * h * k2s, I + 0.5 * h * k2i);
        const double k3i = fI(S + 0.5 * h * k2s, I + 0.5 * h * k2i);
        const double k3r = fR(S + 0.5 * h * k2s, I + 0.5 * h * k2i);
        const double k4s = fS(S + h * k3s, I + h * k3i);
        const double k4i = fI(S + h * k3s, I + h * k3i);
        const double k4r = fR(S + h * k3s, I + h * k3i);
        S += h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
        I += h / 6.0 * (k1i + 2.0 * k2i + 2.0 * k3i + k4i);
        R += h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
        if (step % static_cast<std::size_t>(sample_stride) == 0 || step == n)
            push(static_cast<double>(step) * h);
    }
    return tr;
}

} // namespace sim
} // namespace strainwave

#include "shocklab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "shocklab/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace shocklab {

std::string_view to_string(Limiter l) {
    switch (l) {
        case Limiter::mc:
            return "mc";
        case Limiter::minmod:
            return "minmod";
        case Limiter::none:
            return "none";
        case Limiter::first_order:
            return "first_order";
    }
    return "unknown";
}

Limiter limiter_from_string(std::string_view s) {
    if (s == "mc" || s == "MC") return Limiter::mc;
    if (s == "minmod") return Limiter::minmod;
    if (s == "none") return Limiter::none;
    if (s == "first_order") return Limiter::first_order;
    throw InvalidArgument("unknown limiter '" + std::string(s) + "'");
}

void SolverConfig::validate() const {
    if (!(cfl_target > 0.0 && cfl_target < 1.0)) {
        throw InvalidArgument("cfl_target must lie in (0, 1)");
    }
    if (!(cfl_max >= cfl_target)) {
        throw InvalidArgument("cfl_max must be at least cfl_target");
    }
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
        throw InvalidArgument("t_final must be finite and non-negative");
    }
    if (diagnostic_interval < 0.0 || snapshot_interval < 0.0) {
        throw InvalidArgument("sampling intervals must be non-negative");
    }
    if (threads < 0 || max_steps < 1) {
        throw InvalidArgument("threads must be >= 0 and max_steps >= 1");
    }
}

namespace {

struct ExpLaw {
    void eval(double w, double& s, double& slope) const {
        slope = std::exp(w);
        s = slope - 1.0;
    }
};

struct CubicLaw {
    double a, b, g;
    void eval(double w, double& s, double& slope) const {
        s = w * (a + w * (b + g * w));
        slope = a + w * (2.0 * b + 3.0 * g * w);
    }
};

inline double limit(Limiter lim, double theta) {
    switch (lim) {
        case Limiter::mc:
            return std::max(0.0, std::min({0.5 * (1.0 + theta), 2.0, 2.0 * theta}));
        case Limiter::minmod:
            return std::max(0.0, std::min(1.0, theta));
        case Limiter::none:
            return 1.0;
        case Limiter::first_order:
            return 0.0;
    }
    return 0.0;
}

struct LineWorkspace {
    std::vector<double> sig, c, Z, u;
    std::vector<double> b1, b2;  // wave strengths per interface
    std::vector<double> f0, f1;  // correction fluxes per interface
    std::vector<double> eps, mom, K, rho;  // gather buffers for y sweeps

    void resize(std::size_t n) {
        for (auto* v : {&sig, &c, &Z, &u, &b1, &b2, &f0, &f1, &eps, &mom, &K, &rho}) {
            v->resize(n);
        }
    }
};

// Updates cells 2..n-3 of one padded line in place. Interface k sits between
// cells k-1 and k. Returns the largest r c over the line, or NaN on loss of
// hyperbolicity.
template <class Law>
double sweep_line(double* eps, double* mom, const double* K, const double* rho, int n, double r,
                  Limiter lim, const Law& law, LineWorkspace& ws) {
    double c_max = 0.0;
    for (int k = 0; k < n; ++k) {
        double s, slope;
        law.eval(K[k] * eps[k], s, slope);
        if (!(slope > 0.0)) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        const double c = std::sqrt(K[k] * slope / rho[k]);
        ws.sig[k] = s;
        ws.c[k] = c;
        ws.Z[k] = rho[k] * c;
        ws.u[k] = mom[k] / rho[k];
        c_max = std::max(c_max, c);
    }

    // Left-going wave b1 (1, Z_{k-1}) at -c_{k-1}; right-going b2 (1, -Z_k) at +c_k.
    for (int k = 1; k < n; ++k) {
        const double d1 = ws.u[k - 1] - ws.u[k];
        const double d2 = ws.sig[k - 1] - ws.sig[k];
        const double zl = ws.Z[k - 1];
        const double zr = ws.Z[k];
        const double inv = 1.0 / (zl + zr);
        ws.b1[k] = (d2 + zr * d1) * inv;
        ws.b2[k] = (zl * d1 - d2) * inv;
    }

    const bool second_order = lim != Limiter::first_order;
    if (second_order) {
        for (int k = 2; k <= n - 2; ++k) {
            const double zl = ws.Z[k - 1];
            const double zr = ws.Z[k];

            // Strain components are weighted by the mean impedance so the
            // projection is invariant under rescaling of the medium.
            const double w = 0.5 * (zl + zr);
            const double w2 = w * w;

            // Left-going family: upwind interface is k + 1.
            double phi1 = 0.0;
            const double w1e = ws.b1[k];
            const double w1m = ws.b1[k] * zl;
            const double n1 = w2 * w1e * w1e + w1m * w1m;
            if (n1 > 0.0) {
                const double up = ws.b1[k + 1];
                const double theta = (w2 * up * w1e + up * ws.Z[k] * w1m) / n1;
                phi1 = limit(lim, theta);
            }
            // Right-going family: upwind interface is k - 1.
            double phi2 = 0.0;
            const double w2e = ws.b2[k];
            const double w2m = -ws.b2[k] * zr;
            const double n2 = w2 * w2e * w2e + w2m * w2m;
            if (n2 > 0.0) {
                const double up = ws.b2[k - 1];
                const double theta = (w2 * up * w2e - up * ws.Z[k - 1] * w2m) / n2;
                phi2 = limit(lim, theta);
            }
            const double a1 = -0.5 * (1.0 - r * ws.c[k - 1]) * phi1;
            const double a2 = 0.5 * (1.0 - r * ws.c[k]) * phi2;
            ws.f0[k] = a1 * w1e + a2 * w2e;
            ws.f1[k] = a1 * w1m + a2 * w2m;
        }
    }

    for (int k = 2; k <= n - 3; ++k) {
        // A+ dq from interface k and A- dq from interface k + 1.
        double de = ws.b2[k] + ws.b1[k + 1];
        double dm = -ws.b2[k] * ws.Z[k] + ws.b1[k + 1] * ws.Z[k];
        if (second_order) {
            de += ws.f0[k + 1] - ws.f0[k];
            dm += ws.f1[k + 1] - ws.f1[k];
        }
        eps[k] -= r * de;
        mom[k] -= r * dm;
    }
    return r * c_max;
}

template <class Law>
double sweep_x(StateField& s, double dt, Limiter lim, const Law& law, int threads) {
    const Grid2D& g = s.grid;
    const double r = dt / g.dx;
    const int n = g.stride();
    double courant = 0.0;
    bool ok = true;
#pragma omp parallel num_threads(threads) if (threads > 1)
    {
        LineWorkspace ws;
        ws.resize(static_cast<std::size_t>(n));
#pragma omp for schedule(static) reduction(max : courant) reduction(&& : ok)
        for (int j = 0; j < g.ny; ++j) {
            const std::size_t base = g.index(-Grid2D::ghost, j);
            const double c = sweep_line(s.eps.data() + base, s.mom_x.data() + base,
                                        s.K.data() + base, s.rho.data() + base, n, r, lim, law, ws);
            if (std::isnan(c)) {
                ok = false;
            } else {
                courant = std::max(courant, c);
            }
        }
    }
    if (!ok) {
        throw HyperbolicityLoss("sound speed lost positivity during x sweep");
    }
    return courant;
}

template <class Law>
double sweep_y(StateField& s, double dt, Limiter lim, const Law& law, int threads) {
    const Grid2D& g = s.grid;
    const double r = dt / g.dy;
    const int n = g.padded_rows();
    double courant = 0.0;
    bool ok = true;
#pragma omp parallel num_threads(threads) if (threads > 1)
    {
        LineWorkspace ws;
        ws.resize(static_cast<std::size_t>(n));
#pragma omp for schedule(static) reduction(max : courant) reduction(&& : ok)
        for (int i = 0; i < g.nx; ++i) {
            for (int k = 0; k < n; ++k) {
                const std::size_t idx = g.index(i, k - Grid2D::ghost);
                ws.eps[k] = s.eps[idx];
                ws.mom[k] = s.mom_y[idx];
                ws.K[k] = s.K[idx];
                ws.rho[k] = s.rho[idx];
            }
            const double c = sweep_line(ws.eps.data(), ws.mom.data(), ws.K.data(), ws.rho.data(),
                                        n, r, lim, law, ws);
            if (std::isnan(c)) {
                ok = false;
                continue;
            }
            courant = std::max(courant, c);
            for (int k = Grid2D::ghost; k < n - Grid2D::ghost; ++k) {
                const std::size_t idx = g.index(i, k - Grid2D::ghost);
                s.eps[idx] = ws.eps[k];
                s.mom_y[idx] = ws.mom[k];
            }
        }
    }
    if (!ok) {
        throw HyperbolicityLoss("sound speed lost positivity during y sweep");
    }
    return courant;
}

int thread_count(const SolverConfig& cfg) {
#ifdef _OPENMP
    return cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#else
    (void)cfg;
    return 1;
#endif
}

template <class Law>
StepReport step_with(StateField& s, const SolverConfig& cfg, const Law& law, double dt) {
    const int threads = thread_count(cfg);
    const Grid2D& g = s.grid;
    StepReport rep;
    auto note = [&](double courant, double r) {
        rep.courant = std::max(rep.courant, courant);
        rep.max_speed = std::max(rep.max_speed, courant / r);
    };
    fill_ghosts(s, cfg.bc_x);
    note(sweep_x(s, 0.5 * dt, cfg.limiter, law, threads), 0.5 * dt / g.dx);
    if (g.ny > 1) {
        fill_ghosts(s, cfg.bc_x);
        note(sweep_y(s, dt, cfg.limiter, law, threads), dt / g.dy);
    }
    fill_ghosts(s, cfg.bc_x);
    note(sweep_x(s, 0.5 * dt, cfg.limiter, law, threads), 0.5 * dt / g.dx);
    fill_ghosts(s, cfg.bc_x);
    return rep;
}

StepReport step_unchecked(StateField& s, const SolverConfig& cfg, const ConstitutiveLaw& law,
                          double dt) {
    StepReport rep;
    if (law.kind() == LawKind::exponential) {
        rep = step_with(s, cfg, ExpLaw{}, dt);
    } else {
        rep = step_with(s, cfg, CubicLaw{law.alpha(), law.beta(), law.gamma()}, dt);
    }
    if (!all_finite(s)) {
        throw NonFiniteState("non-finite value after step");
    }
    return rep;
}

double cfl_length(const Grid2D& g) { return g.ny == 1 ? g.dx : std::min(g.dx, g.dy); }

// Rate of energy supplied through the x boundaries: (sigma u)|_right - (sigma u)|_left.
double boundary_power(const StateField& s, const ConstitutiveLaw& law, BoundaryX bc) {
    if (bc == BoundaryX::periodic) {
        return 0.0;
    }
    const Grid2D& g = s.grid;
    double p = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        p += s.sigma(law, g.nx - 1, j) * s.u(g.nx - 1, j) - s.sigma(law, 0, j) * s.u(0, j);
    }
    return p * g.dy;
}

std::optional<double> locate_front(const StateField& s, const ConstitutiveLaw& law,
                                   const std::optional<FrontLevels>& levels) {
    if (!levels) {
        return std::nullopt;
    }
    return shock_position(y_average(s, law), levels->sigma_l, levels->sigma_r);
}

}  // namespace

double stable_dt(const StateField& state, const ConstitutiveLaw& law, double cfl) {
    const double c = max_wave_speed(state, law);
    if (!(c > 0.0)) {
        throw InvalidArgument("state has no positive wave speed");
    }
    return cfl * cfl_length(state.grid) / c;
}

StepReport step(StateField& state, const SolverConfig& config, const ConstitutiveLaw& law,
                double dt) {
    config.validate();
    if (!(dt > 0.0)) {
        throw InvalidArgument("dt must be positive");
    }
    const double courant = dt * max_wave_speed(state, law) / cfl_length(state.grid);
    if (courant > config.cfl_target * (1.0 + 1e-12)) {
        throw CflViolation("Courant number " + std::to_string(courant) + " exceeds target " +
                           std::to_string(config.cfl_target));
    }
    return step_unchecked(state, config, law, dt);
}

EntropyTrace RunResult::entropy_trace() const {
    EntropyTrace tr;
    for (const auto& s : samples) {
        tr.add(s.t, s.eta, s.boundary_work);
    }
    return tr;
}

FrontTrace RunResult::front_trace() const {
    FrontTrace tr;
    for (const auto& s : samples) {
        if (s.t > 0.0 && s.front_x) {
            tr.add(s.t, *s.front_x);
        }
    }
    return tr;
}

RunResult run(const Problem& problem, const SampleObserver& observer) {
    const SolverConfig& cfg = problem.config;
    cfg.validate();
    const ConstitutiveLaw& law = problem.law;

    RunResult res;
    res.final_state = problem.initial;
    StateField& s = res.final_state;
    fill_ghosts(s, cfg.bc_x);
    if (!all_finite(s)) {
        throw NonFiniteState("initial state is not finite");
    }

    double t = 0.0;
    double work = 0.0;
    auto record = [&](double dt) {
        res.samples.push_back({t, dt, entropy(s, law), work, locate_front(s, law, problem.front)});
        if (observer) {
            observer(t, s);
        }
    };
    record(0.0);
    res.snapshots.push_back({0.0, s});

    const double T = cfg.t_final;
    const double eps_t = 1e-12 * std::max(1.0, T);
    long diag_k = 1;
    long snap_k = 1;
    auto next_diag = [&] { return cfg.diagnostic_interval > 0.0 ? diag_k * cfg.diagnostic_interval : T; };
    auto next_snap = [&] { return cfg.snapshot_interval > 0.0 ? snap_k * cfg.snapshot_interval : T; };

    std::vector<double> save_eps, save_mx, save_my;
    double seen_speed = 0.0;
    while (t < T - eps_t) {
        if (res.steps >= cfg.max_steps) {
            throw InvalidArgument("max_steps exceeded before t_final");
        }
        const double target = std::min({T, next_diag(), next_snap()});
        // After the first step, dt follows the largest speed the sweeps saw;
        // a step that overshoots cfl_max is rejected below.
        double dt = seen_speed > 0.0 ? cfg.cfl_target * cfl_length(s.grid) / seen_speed
                                     : stable_dt(s, law, cfg.cfl_target);
        bool hits_target = false;
        if (t + dt >= target - eps_t) {
            dt = target - t;
            hits_target = true;
        }
        const double p0 = boundary_power(s, law, cfg.bc_x);
        save_eps = s.eps;
        save_mx = s.mom_x;
        save_my = s.mom_y;
        for (int attempt = 0;; ++attempt) {
            const StepReport rep = step_unchecked(s, cfg, law, dt);
            seen_speed = rep.max_speed;
            if (rep.courant <= cfg.cfl_max || attempt >= 20) {
                if (rep.courant > cfg.cfl_max) {
                    throw CflViolation("could not find a stable step");
                }
                break;
            }
            s.eps = save_eps;
            s.mom_x = save_mx;
            s.mom_y = save_my;
            dt *= cfg.cfl_target / rep.courant;
            hits_target = false;
            ++res.rejected_steps;
        }
        t = hits_target ? target : t + dt;
        work += 0.5 * (p0 + boundary_power(s, law, cfg.bc_x)) * dt;
        ++res.steps;

        const bool at_end = t >= T - eps_t;
        bool diag_due = cfg.diagnostic_interval <= 0.0 || at_end;
        while (cfg.diagnostic_interval > 0.0 && next_diag() <= t + eps_t) {
            diag_due = true;
            ++diag_k;
        }
        bool snap_due = at_end;
        while (cfg.snapshot_interval > 0.0 && next_snap() <= t + eps_t) {
            snap_due = true;
            ++snap_k;
        }
        if (diag_due) {
            record(dt);
        }
        if (snap_due) {
            res.snapshots.push_back({t, s});
        }
    }
    res.t_final = t;
    return res;
}

RunResult run_homogenized_1d(const EffectiveMedium& med, const ConstitutiveLaw& law,
                             const Line1D& line,
                             const std::function<PointState(double x)>& initial,
                             const SolverConfig& config, std::optional<FrontLevels> front) {
    const HomogenizedSystem sys = homogenized_system(med, law);
    Grid2D g;
    g.nx = line.nx;
    g.ny = 1;
    g.dx = line.dx;
    g.dy = line.dx;
    g.x0 = line.x0;
    Problem p;
    p.initial = StateField(g);
    fill_material(p.initial, sys.material());
    initialize_from_stress(p.initial, law, [&](double x, double) { return initial(x); });
    p.law = law;
    p.config = config;
    p.front = front;
    return run(p);
}

}  // namespace shocklab

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "shocklab/errors.hpp"
#include "shocklab/rh.hpp"
#include "shocklab/solver.hpp"

using namespace shocklab;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Grid2D line_grid(int nx, double length = 1.0) {
    Grid2D g;
    g.nx = nx;
    g.ny = 1;
    g.dx = length / nx;
    g.dy = g.dx;
    return g;
}

// Right-going sine in linear acoustics with K = rho = 1 on [0, 1).
StateField sine_state(int nx) {
    StateField s(line_grid(nx));
    for (int i = 0; i < nx; ++i) {
        const double x = s.grid.xc(i);
        // Cell averages of 0.1 sin(2 pi x).
        const double h = s.grid.dx;
        const double avg = 0.1 * (std::cos(kTwoPi * (x - h / 2)) - std::cos(kTwoPi * (x + h / 2))) / (kTwoPi * h);
        s.eps[s.idx(i, 0)] = avg;
        s.mom_x[s.idx(i, 0)] = -avg;
    }
    return s;
}

double sine_error(int nx, double t_final, Limiter lim) {
    Problem p;
    p.initial = sine_state(nx);
    p.law = ConstitutiveLaw::linear();
    p.config.t_final = t_final;
    p.config.bc_x = BoundaryX::periodic;
    p.config.limiter = lim;
    const auto r = run(p);
    const auto eps0 = [](double x) { return 0.1 * std::sin(kTwoPi * x); };
    const auto u0 = [](double x) { return -0.1 * std::sin(kTwoPi * x); };
    double err = 0.0;
    const auto& g = r.final_state.grid;
    for (int i = 0; i < nx; ++i) {
        // Exact cell average by Simpson over the cell.
        const double a = g.xc(i) - g.dx / 2;
        const double exact = oracle::simpson(
            [&](double x) {
                double e, u;
                oracle::dalembert(eps0, u0, 1.0, x, t_final, e, u);
                return e;
            },
            a, a + g.dx, 1e-14) / g.dx;
        err += std::fabs(r.final_state.eps[g.index(i, 0)] - exact) * g.dx;
    }
    return err;
}

StateField layered_state(const MediumSpec& m, const Grid2D& g) {
    StateField s(g);
    sample_material(s, m);
    return s;
}

}  // namespace

TEST(SolverConfig, Validation) {
    SolverConfig c;
    EXPECT_NO_THROW(c.validate());
    c.cfl_target = 1.0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c.cfl_target = 0.0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    EXPECT_EQ(limiter_from_string("minmod"), Limiter::minmod);
    EXPECT_THROW(limiter_from_string("superbee"), InvalidArgument);
}

TEST(Step, ConstantStressStateUnchanged) {
    MediumSpec m;
    m.K_B = 4;
    m.rho_B = 3;
    m.theta_deg = 45;
    const auto g = oblique_grid(m, 16, 2.0);
    auto s = layered_state(m, g);
    const auto law = ConstitutiveLaw::exponential();
    initialize_from_stress(s, law, [](double, double) { return PointState{0.7, 0.0, 0.0}; });
    const auto before = s;
    SolverConfig cfg;
    cfg.bc_x = BoundaryX::periodic;
    for (int k = 0; k < 20; ++k) step(s, cfg, law, stable_dt(s, law, 0.9));
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const auto idx = g.index(i, j);
            ASSERT_NEAR(s.eps[idx], before.eps[idx], 1e-14);
            ASSERT_NEAR(s.mom_x[idx], 0.0, 1e-14);
            ASSERT_NEAR(s.mom_y[idx], 0.0, 1e-14);
        }
}

TEST(Step, CflViolationThrows) {
    auto s = sine_state(32);
    SolverConfig cfg;
    const auto law = ConstitutiveLaw::linear();
    EXPECT_THROW(step(s, cfg, law, 0.95 / 32), CflViolation);
    EXPECT_NO_THROW(step(s, cfg, law, 0.9 / 32));
}

TEST(Step, NonFiniteStateThrows) {
    auto s = sine_state(16);
    s.eps[s.idx(3, 0)] = std::nan("");
    SolverConfig cfg;
    EXPECT_THROW(step(s, cfg, ConstitutiveLaw::linear(), 0.01), HyperbolicityLoss);
}

TEST(Run, ZeroFinalTimeReturnsInitialSnapshot) {
    Problem p;
    p.initial = sine_state(16);
    p.law = ConstitutiveLaw::linear();
    const auto r = run(p);
    ASSERT_EQ(r.snapshots.size(), 1u);
    EXPECT_EQ(r.snapshots[0].t, 0.0);
    EXPECT_EQ(r.steps, 0);
    ASSERT_EQ(r.samples.size(), 1u);
}

TEST(Run, HitsSampleAndSnapshotTimesExactly) {
    Problem p;
    p.initial = sine_state(32);
    p.law = ConstitutiveLaw::linear();
    p.config.bc_x = BoundaryX::periodic;
    p.config.t_final = 1.0;
    p.config.diagnostic_interval = 0.25;
    p.config.snapshot_interval = 0.5;
    const auto r = run(p);
    ASSERT_EQ(r.samples.size(), 5u);
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(r.samples[k].t, 0.25 * k, 1e-14);
    ASSERT_EQ(r.snapshots.size(), 3u);
    EXPECT_NEAR(r.snapshots[1].t, 0.5, 1e-14);
    EXPECT_EQ(r.snapshots[2].t, 1.0);
    EXPECT_EQ(r.t_final, 1.0);
}

TEST(Run, SineAdvectsWithSecondOrderError) {
    const double e1 = sine_error(64, 1.0, Limiter::mc);
    const double e2 = sine_error(128, 1.0, Limiter::mc);
    EXPECT_LT(e1, 2e-3);
    EXPECT_GT(std::log2(e1 / e2), 1.8);
}

TEST(Run, UnlimitedSchemeIsSecondOrder) {
    const double e1 = sine_error(32, 1.0, Limiter::none);
    const double e2 = sine_error(64, 1.0, Limiter::none);
    EXPECT_GT(std::log2(e1 / e2), 1.9);
}

TEST(Run, FirstOrderSchemeIsFirstOrder) {
    const double e1 = sine_error(64, 0.5, Limiter::first_order);
    const double e2 = sine_error(128, 0.5, Limiter::first_order);
    const double order = std::log2(e1 / e2);
    EXPECT_GT(order, 0.8);
    EXPECT_LT(order, 1.2);
}

TEST(SolverProperty, PeriodicConservation2D) {
    MediumSpec m;
    m.K_B = 3;
    m.rho_B = 2;
    m.theta_deg = 30;
    const auto g = oblique_grid(m, 12, 2.0);
    auto s = layered_state(m, g);
    const auto law = ConstitutiveLaw::exponential();
    initialize_from_stress(s, law, [](double x, double y) {
        return PointState{0.3 + 0.2 * std::sin(kTwoPi * x / 2.0), 0.1 * std::cos(kTwoPi * y), 0.05};
    });
    SolverConfig cfg;
    cfg.bc_x = BoundaryX::periodic;
    const auto t0 = conserved_totals(s);
    for (int k = 0; k < 200; ++k) step(s, cfg, law, stable_dt(s, law, 0.9));
    const auto t1 = conserved_totals(s);
    EXPECT_LE(std::fabs(t1.eps - t0.eps), 1e-12 * std::fabs(t0.eps));
    EXPECT_LE(std::fabs(t1.mom_x - t0.mom_x), 1e-12 * std::max(1.0, std::fabs(t0.mom_x)));
    EXPECT_LE(std::fabs(t1.mom_y - t0.mom_y), 1e-12 * std::fabs(t0.mom_y));
}

TEST(SolverProperty, MinmodRiemannStaysInBounds) {
    const auto law = ConstitutiveLaw::exponential();
    for (double sl : {0.5, 2.0, 6.0}) {
        Problem p;
        p.initial = StateField(line_grid(200, 10.0));
        initialize_from_stress(p.initial, law, [&](double x, double) {
            return PointState{x < 5 ? sl : 0.0, 0.0, 0.0};
        });
        p.law = law;
        p.config.limiter = Limiter::minmod;
        p.config.t_final = 2.0;
        const double lo = 0.0;
        const double hi = std::log1p(sl);
        const auto r = run(p, [&](double, const StateField& s) {
            for (int i = 0; i < s.grid.nx; ++i) {
                ASSERT_GE(s.eps[s.idx(i, 0)], lo - 1e-10);
                ASSERT_LE(s.eps[s.idx(i, 0)], hi + 1e-10);
            }
        });
        EXPECT_GT(r.steps, 10);
    }
}

TEST(SolverProperty, TransverseStripMatchesLine) {
    MediumSpec m;
    m.K_B = 4;
    m.rho_B = 2;
    const auto law = ConstitutiveLaw::exponential();
    auto make = [&](int ny) {
        Grid2D g;
        g.nx = 160;
        g.ny = ny;
        g.dx = g.dy = 1.0 / 16;
        auto s = layered_state(m, g);
        initialize_from_stress(s, law, [](double x, double) {
            return PointState{x < 2.5 ? 1.5 : 0.0, x < 2.5 ? -0.6 : 0.0, 0.0};
        });
        Problem p;
        p.initial = s;
        p.law = law;
        p.config.t_final = 3.0;
        return run(p).final_state;
    };
    const auto strip = make(4);
    const auto line = make(1);
    for (int i = 0; i < 160; ++i)
        for (int j = 0; j < 4; ++j) {
            ASSERT_NEAR(strip.eps[strip.idx(i, j)], line.eps[line.idx(i, 0)], 1e-12);
            ASSERT_NEAR(strip.mom_x[strip.idx(i, j)], line.mom_x[line.idx(i, 0)], 1e-12);
            ASSERT_EQ(strip.mom_y[strip.idx(i, j)], 0.0);
        }
}

TEST(SolverProperty, NormalizedRunReproducesStress) {
    // Time rescaling by sqrt(K_A/rho_A) leaves the stress field unchanged.
    MediumSpec m;
    m.K_A = 2;
    m.rho_A = 8;
    m.K_B = 6;
    m.rho_B = 4;
    const auto law = ConstitutiveLaw::exponential();
    const auto n = normalize(m);
    auto solve = [&](const MediumSpec& spec, double u_scale, double t) {
        Grid2D g = line_grid(160, 10.0);
        auto s = layered_state(spec, g);
        initialize_from_stress(s, law, [&](double x, double) {
            return PointState{x < 3 ? 1.0 : 0.0, x < 3 ? -0.4 * u_scale : 0.0, 0.0};
        });
        Problem p;
        p.initial = s;
        p.law = law;
        p.config.t_final = t;
        return run(p).final_state;
    };
    const double T = 4.0;
    const auto a = solve(m, 1.0, T);
    const auto b = solve(n.spec, n.scaling.velocity_scale, T * n.scaling.time_scale);
    for (int i = 0; i < 160; ++i) {
        ASSERT_NEAR(a.sigma(law, i, 0), b.sigma(law, i, 0), 1e-10);
        ASSERT_NEAR(a.u(i, 0) * n.scaling.velocity_scale, b.u(i, 0), 1e-10);
    }
}

TEST(RunHomogenized1d, HomogeneousMatchesOriginal) {
    const auto law = ConstitutiveLaw::exponential();
    const auto spec = MediumSpec::homogeneous(2.0, 3.0);
    const auto med = effective_parameters(spec);
    SolverConfig cfg;
    cfg.t_final = 2.0;
    auto ic = [](double x) { return PointState{x < 2 ? 1.0 : 0.0, 0.0, 0.0}; };
    const auto h = run_homogenized_1d(med, law, {100, 0.1, 0.0}, ic, cfg);

    Problem p;
    p.initial = StateField(line_grid(100, 10.0));
    sample_material(p.initial, spec);
    initialize_from_stress(p.initial, law, [&](double x, double) { return ic(x); });
    p.law = law;
    p.config = cfg;
    const auto o = run(p);
    for (int i = 0; i < 100; ++i) {
        ASSERT_EQ(h.final_state.eps[h.final_state.idx(i, 0)], o.final_state.eps[o.final_state.idx(i, 0)]);
    }
}

TEST(RunHomogenized1d, GaussianSplitsAtEffectiveSpeed) {
    MediumSpec m;
    m.K_B = 4;
    m.rho_B = 4;
    const auto med = effective_parameters(m);
    const auto law = ConstitutiveLaw::linear();
    SolverConfig cfg;
    cfg.t_final = 4.0;
    cfg.bc_x = BoundaryX::periodic;
    const double L = 20.0;
    const int nx = 800;
    const auto r = run_homogenized_1d(
        med, law, {nx, L / nx, 0.0},
        [](double x) { return PointState{0.01 * std::exp(-(x - 10) * (x - 10)), 0.0, 0.0}; }, cfg);
    // Locate the right-hand peak.
    const auto& s = r.final_state;
    int best = nx / 2;
    for (int i = nx / 2; i < nx; ++i)
        if (s.eps[s.idx(i, 0)] > s.eps[s.idx(best, 0)]) best = i;
    const double expected = 10.0 + med.c_eff * 4.0;
    EXPECT_NEAR(s.grid.xc(best), expected, 2 * s.grid.dx);
    EXPECT_NEAR(s.eps[s.idx(best, 0)], 0.5 * 0.01 / med.K_bar, 2e-4);
}

TEST(RunHomogenized1d, ConnectedShockTravelsAtPredictedSpeed) {
    MediumSpec m;
    m.K_B = 4;
    const auto med = effective_parameters(m);
    const auto law = ConstitutiveLaw::exponential();
    const auto setup = connect_right_going(1, 0, 0, law, med);
    SolverConfig cfg;
    cfg.t_final = 6.0;
    cfg.diagnostic_interval = 0.15;
    const auto r = run_homogenized_1d(
        med, law, {640, 1.0 / 32, 0.0},
        [&](double x) { return x < 4 ? PointState{1, setup.u_l, 0} : PointState{0, 0, 0}; }, cfg,
        FrontLevels{1.0, 0.0});
    const auto fit = measure_speed(r.front_trace());
    EXPECT_NEAR(fit.speed, setup.s_eff, 0.01 * setup.s_eff);
}

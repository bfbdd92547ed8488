#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "shocklab/diagnostics.hpp"
#include "shocklab/errors.hpp"
#include "shocklab/solver.hpp"

using namespace shocklab;

namespace {

StateField unit_field(int nx, int ny) {
    Grid2D g;
    g.nx = nx;
    g.ny = ny;
    g.dx = 1.0 / nx;
    g.dy = 1.0 / ny;
    return StateField(g);
}

}  // namespace

TEST(YAverage, YInvariantStateEqualsRow) {
    auto s = unit_field(5, 3);
    const auto law = ConstitutiveLaw::linear();
    initialize_from_stress(s, law, [](double x, double) { return PointState{x * x, 2 * x, 0}; });
    const auto avg = y_average(s, law);
    const auto row = row_slice(s, law, 1);
    for (int i = 0; i < 5; ++i) {
        EXPECT_NEAR(avg.sigma[i], row.sigma[i], 1e-15);
        EXPECT_NEAR(avg.u[i], row.u[i], 1e-15);
    }
    EXPECT_THROW(row_slice(s, law, 3), InvalidArgument);
}

TEST(YAverage, TwoRowsAverage) {
    auto s = unit_field(3, 2);
    const auto law = ConstitutiveLaw::linear();
    initialize_from_stress(s, law, [](double, double y) { return PointState{y < 0.5 ? 0.0 : 2.0, 0, 0}; });
    for (double v : y_average(s, law).sigma) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(YAverage, CheckerboardCancels) {
    auto s = unit_field(4, 4);
    const auto law = ConstitutiveLaw::linear();
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) s.eps[s.idx(i, j)] = ((i + j) % 2 == 0) ? 1.0 : -1.0;
    for (double v : y_average(s, law).sigma) EXPECT_EQ(v, 0.0);
}

TEST(ShockPosition, IdealStep) {
    std::vector<double> x, sig;
    for (int i = 0; i < 100; ++i) {
        x.push_back((i + 0.5) * 0.1);
        sig.push_back(x.back() < 3.2 ? 1.0 : 0.0);
    }
    const auto pos = shock_position(x, sig, 1.0, 0.0);
    ASSERT_TRUE(pos);
    EXPECT_NEAR(*pos, 3.2, 0.1);
}

TEST(ShockPosition, UniformNotFound) {
    std::vector<double> x{0.5, 1.5, 2.5}, sig{0.3, 0.3, 0.3};
    EXPECT_FALSE(shock_position(x, sig, 1.0, 0.0));
    EXPECT_THROW(shock_position(x, sig, 1.0, 1.0), InvalidArgument);
}

TEST(ShockPosition, LinearRampInterpolatesExactly) {
    std::vector<double> x, sig;
    for (int i = 0; i <= 10; ++i) {
        x.push_back(i * 0.1);
        sig.push_back(1.0 - i * 0.1);
    }
    EXPECT_NEAR(*shock_position(x, sig, 1.0, 0.0), 0.5, 1e-15);
}

TEST(ShockPosition, PicksRightmostCrossing) {
    std::vector<double> x{0, 1, 2, 3, 4, 5}, sig{1, 0, 1, 1, 0, 0};
    EXPECT_NEAR(*shock_position(x, sig, 1.0, 0.0), 3.5, 1e-15);
}

TEST(RowMeanFront, MeanOfRowCrossings) {
    Grid2D g;
    g.nx = 8;
    g.ny = 2;
    g.dx = g.dy = 0.5;
    StateField t(g);
    const auto law = ConstitutiveLaw::linear();
    // Row 0 steps down at x = 1, row 1 at x = 2.
    initialize_from_stress(t, law, [](double x, double y) {
        return PointState{x < (y < 0.5 ? 1.0 : 2.0) ? 1.0 : 0.0, 0, 0};
    });
    EXPECT_NEAR(*row_mean_front(t, law, 1.0, 0.0), 1.5, 1e-15);
    initialize_from_stress(t, law, [](double x, double y) {
        return PointState{y < 0.5 && x < 1.0 ? 1.0 : 0.0, 0, 0};
    });
    EXPECT_FALSE(row_mean_front(t, law, 1.0, 0.0));
}

TEST(MeasureSpeed, ExactLine) {
    FrontTrace tr;
    for (int k = 0; k < 20; ++k) tr.add(0.1 * k, 0.5 + 1.2 * 0.1 * k);
    const auto fit = measure_speed(tr);
    EXPECT_NEAR(fit.speed, 1.2, 1e-12);
    EXPECT_LT(fit.residual, 1e-12);
    EXPECT_EQ(fit.samples, 10u);
}

TEST(MeasureSpeed, ConstantPositions) {
    FrontTrace tr;
    for (int k = 0; k < 12; ++k) tr.add(k, 3.0);
    EXPECT_EQ(measure_speed(tr).speed, 0.0);
}

TEST(MeasureSpeed, AlternatingPerturbation) {
    FrontTrace tr;
    std::vector<double> t, x;
    for (int k = 0; k < 40; ++k) {
        t.push_back(0.25 * k);
        x.push_back(1.2 * t.back() + (k % 2 == 0 ? 0.01 : -0.01));
        tr.add(t.back(), x.back());
    }
    const auto fit = measure_speed(tr);
    const auto ref = oracle::lsq(std::vector<double>(t.begin() + 20, t.end()),
                                 std::vector<double>(x.begin() + 20, x.end()));
    EXPECT_NEAR(fit.speed, ref.slope, 1e-12);
    EXPECT_NEAR(fit.speed, 1.2, 0.005);
}

TEST(MeasureSpeed, ErrorsAndOrdering) {
    FrontTrace tr;
    for (int k = 0; k < 8; ++k) tr.add(k, k);
    EXPECT_THROW(measure_speed(tr), InsufficientSamples);
    tr.fit_window = 1.0;
    EXPECT_NEAR(measure_speed(tr).speed, 1.0, 1e-14);
    EXPECT_THROW(tr.add(7, 0), InvalidArgument);
}

TEST(Entropy, Values) {
    auto s = unit_field(4, 4);
    const auto law = ConstitutiveLaw::exponential();
    EXPECT_EQ(entropy(s, law), 0.0);
    std::fill(s.rho.begin(), s.rho.end(), 2.0);
    std::fill(s.mom_x.begin(), s.mom_x.end(), 6.0);
    EXPECT_NEAR(entropy(s, law), 9.0, 1e-14);
    auto t = unit_field(3, 2);
    initialize_from_stress(t, law, [](double, double) { return PointState{1.0, 0, 0}; });
    EXPECT_NEAR(entropy(t, law), 0.3068528194400547, 1e-15);
}

TEST(Entropy, KineticVariants) {
    auto s = unit_field(2, 2);
    std::fill(s.mom_x.begin(), s.mom_x.end(), 1.0);
    std::fill(s.mom_y.begin(), s.mom_y.end(), 2.0);
    const auto law = ConstitutiveLaw::linear();
    EXPECT_NEAR(entropy(s, law, KineticTerm::full), 2.5, 1e-15);
    EXPECT_NEAR(entropy(s, law, KineticTerm::x_only), 0.5, 1e-15);
}

TEST(EntropyTrace, NormalizationAndLoss) {
    EntropyTrace tr;
    tr.add(0.0, 2.0, 0.0);
    tr.add(1.0, 2.5, 1.0);
    const auto n = tr.normalized();
    EXPECT_EQ(n[0], 1.0);
    EXPECT_EQ(n[1], 0.75);
    EXPECT_EQ(tr.loss_at(1.0), 0.25);
    EXPECT_THROW(tr.loss_at(0.5), ProbeMismatch);
}

TEST(Classify, SpecExamples) {
    EXPECT_EQ(classify_losses(0.10, 0.09), RunClass::shock);
    EXPECT_EQ(classify_losses(0.02, 0.008), RunClass::regularized);
    EXPECT_EQ(classify_losses(0.02, 0.015), RunClass::indeterminate);
}

TEST(Classify, FromTraces) {
    auto trace = [](double loss) {
        EntropyTrace t;
        t.add(0, 1.0);
        t.add(5, 1.0 - loss);
        return t;
    };
    const ResolvedTrace a[] = {{64, trace(0.10)}, {32, trace(0.12)}};
    EXPECT_EQ(classify_run(a, 5.0), RunClass::shock);
    const ResolvedTrace b[] = {{32, trace(0.02)}, {64, trace(0.008)}};
    EXPECT_EQ(classify_run(b, 5.0), RunClass::regularized);
    EXPECT_THROW(classify_run(b, 4.0), ProbeMismatch);
    const ResolvedTrace c[] = {{32, trace(0.02)}, {48, trace(0.008)}};
    EXPECT_THROW(classify_run(c, 5.0), InvalidArgument);
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

TEST(DiagnosticsProperty, TranslatingStepAdvancesByTranslation) {
    oracle::Rng rng(61);
    const double dx = 0.05;
    std::vector<double> x;
    for (int i = 0; i < 400; ++i) x.push_back((i + 0.5) * dx);
    for (int trial = 0; trial < 50; ++trial) {
        const double x0 = rng.uniform(2, 5);
        const double shift = rng.uniform(0.01, 0.3);
        std::vector<double> frame;
        std::optional<double> prev;
        for (int k = 0; k < 20; ++k) {
            const double xs = x0 + k * shift;
            frame.clear();
            for (double xc : x) frame.push_back(xc < xs ? 2.0 : 0.5);
            const auto pos = shock_position(x, frame, 2.0, 0.5);
            ASSERT_TRUE(pos);
            ASSERT_NEAR(*pos, xs, dx / 2 + 1e-12);
            if (prev) ASSERT_NEAR(*pos - *prev, shift, dx);
            prev = pos;
        }
    }
}

TEST(DiagnosticsProperty, AffineTracesFitExactly) {
    oracle::Rng rng(62);
    for (int trial = 0; trial < 100; ++trial) {
        const double a = rng.uniform(-5, 5), b = rng.uniform(-3, 3);
        FrontTrace tr;
        double t = 0;
        const int n = rng.integer(10, 60);
        for (int k = 0; k < n; ++k) {
            t += rng.uniform(0.01, 0.5);
            tr.add(t, a + b * t);
        }
        const auto fit = measure_speed(tr);
        ASSERT_NEAR(fit.speed, b, 1e-10);
        ASSERT_LT(fit.residual, 1e-12);
    }
}

TEST(DiagnosticsProperty, EntropyNonNegativeAndDecreasingInSmoothRun) {
    Problem p;
    Grid2D g;
    g.nx = 64;
    g.ny = 1;
    g.dx = g.dy = 1.0 / 64;
    p.initial = StateField(g);
    p.law = ConstitutiveLaw::exponential();
    initialize_from_stress(p.initial, p.law, [](double x, double) {
        return PointState{0.2 * std::sin(2 * M_PI * x), 0.1 * std::cos(2 * M_PI * x), 0};
    });
    p.config.bc_x = BoundaryX::periodic;
    p.config.t_final = 1.0;
    const auto r = run(p);
    double prev = r.samples.front().eta;
    for (const auto& s : r.samples) {
        ASSERT_GE(s.eta, 0.0);
        ASSERT_LE(s.eta, prev * (1 + 1e-13));
        prev = s.eta;
    }
}

TEST(DiagnosticsProperty, SmoothLossShrinksUnderRefinement) {
    auto loss = [](int n) {
        Problem p;
        Grid2D g;
        g.nx = n;
        g.ny = 1;
        g.dx = g.dy = 1.0 / n;
        p.initial = StateField(g);
        p.law = ConstitutiveLaw::exponential();
        initialize_from_stress(p.initial, p.law, [](double x, double) {
            return PointState{0.05 * std::sin(2 * M_PI * x), 0.0, 0};
        });
        p.config.bc_x = BoundaryX::periodic;
        p.config.t_final = 2.0;
        return run(p).entropy_trace().loss_at(2.0);
    };
    const double l1 = loss(32);
    const double l2 = loss(64);
    EXPECT_GT(l1, 0.0);
    EXPECT_LT(l2, l1);
}

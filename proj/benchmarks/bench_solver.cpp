#include <benchmark/benchmark.h>

#include <cmath>

#include "shocklab/harness.hpp"
#include "shocklab/riemann.hpp"
#include "shocklab/solver.hpp"

using namespace shocklab;

static void BM_RiemannSweep(benchmark::State& st) {
    const auto law = ConstitutiveLaw::exponential();
    const Material a{1.0, 1.0}, b{4.0, 4.0};
    Conserved l{0.3, 0.1, 0.0}, r{0.05, -0.2, 0.0};
    for (auto _ : st) {
        auto w = riemann_sweep(l, r, a, b, law, SweepAxis::x);
        benchmark::DoNotOptimize(w);
        l.eps += 1e-12;
    }
}
BENCHMARK(BM_RiemannSweep);

static void BM_Step(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const bool cubic = st.range(1) != 0;
    MediumSpec spec;
    spec.theta_deg = 45;
    spec.K_B = 4;
    spec.rho_B = 4;
    Grid2D g = oblique_grid(spec, n, 4.0);
    StateField s(g);
    sample_material(s, spec);
    const auto law = cubic ? ConstitutiveLaw::cubic(0.1, 0, 5) : ConstitutiveLaw::exponential();
    initialize_from_stress(s, law, [](double x, double y) {
        return PointState{0.2 * std::exp(-(x - 2) * (x - 2) - y * y), 0, 0};
    });
    SolverConfig cfg;
    const double dt = stable_dt(s, law, 0.5);
    for (auto _ : st) step(s, cfg, law, dt);
    st.SetItemsProcessed(st.iterations() * static_cast<long>(g.nx) * g.ny);
}
BENCHMARK(BM_Step)->Args({32, 0})->Args({64, 0})->Args({64, 1})->Unit(benchmark::kMillisecond);

static void BM_SmallExperiment(benchmark::State& st) {
    ExperimentConfig c;
    c.medium.K_B = c.medium.rho_B = 2;
    c.resolution = 16;
    c.length_x = 8;
    c.samples = 20;
    for (auto _ : st) benchmark::DoNotOptimize(run_experiment(c));
}
BENCHMARK(BM_SmallExperiment)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

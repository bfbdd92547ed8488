#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "shocklab/diagnostics.hpp"
#include "shocklab/homogenize.hpp"
#include "shocklab/media.hpp"
#include "shocklab/state.hpp"

namespace shocklab {

enum class Limiter {
    mc,           // monotonized central
    minmod,
    none,         // unlimited Lax-Wendroff corrections
    first_order,  // Godunov, no corrections
};

std::string_view to_string(Limiter l);
Limiter limiter_from_string(std::string_view s);

struct SolverConfig {
    double cfl_target = 0.9;
    /// A step whose observed Courant number exceeds this is rejected and retried.
    double cfl_max = 1.0;
    Limiter limiter = Limiter::mc;
    double t_final = 0.0;
    BoundaryX bc_x = BoundaryX::outflow;  // y is always periodic
    /// Spacing of diagnostic samples in time; 0 samples after every step.
    double diagnostic_interval = 0.0;
    /// Spacing of stored snapshots; 0 keeps only the initial and final state.
    double snapshot_interval = 0.0;
    /// OpenMP threads for the line sweeps; 0 uses the runtime default.
    int threads = 1;
    long max_steps = 50'000'000;

    void validate() const;
};

struct StepReport {
    double courant = 0.0;    // largest c dt_sweep / h_sweep over the three sweeps
    double max_speed = 0.0;  // largest sound speed seen by the sweeps
};

/// One Strang-split step: x over dt/2, y over dt, x over dt/2. Throws
/// CflViolation if dt exceeds the configured target for the current state and
/// NonFiniteState if the update produced NaN or Inf.
StepReport step(StateField& state, const SolverConfig& config, const ConstitutiveLaw& law,
                double dt);

/// Largest stable dt for `cfl` at the current state.
double stable_dt(const StateField& state, const ConstitutiveLaw& law, double cfl);

/// Stress levels used to locate the front at every diagnostic sample.
struct FrontLevels {
    double sigma_l = 0.0;
    double sigma_r = 0.0;
};

struct DiagnosticSample {
    double t = 0.0;
    double dt = 0.0;  // step that ended at t (0 for the initial sample)
    double eta = 0.0;
    double boundary_work = 0.0;
    std::optional<double> front_x;
};

struct Snapshot {
    double t = 0.0;
    StateField state;
};

struct Problem {
    StateField initial;
    ConstitutiveLaw law = ConstitutiveLaw::exponential();
    SolverConfig config;
    std::optional<FrontLevels> front;
};

struct RunResult {
    StateField final_state;
    double t_final = 0.0;
    std::vector<Snapshot> snapshots;
    std::vector<DiagnosticSample> samples;
    long steps = 0;
    long rejected_steps = 0;

    EntropyTrace entropy_trace() const;
    /// Samples where the front was found; t = 0 is skipped.
    FrontTrace front_trace() const;
};

using SampleObserver = std::function<void(double t, const StateField& state)>;

/// Adaptive time loop. Sample and snapshot times are hit exactly; the
/// observer sees the state at every diagnostic sample.
RunResult run(const Problem& problem, const SampleObserver& observer = {});

/// 1D line along x for the homogenized system.
struct Line1D {
    int nx = 1;
    double dx = 1.0;
    double x0 = 0.0;
};

/// Solves eps_t - u_x = 0, rho_bar u_t - sigma(eps; K_bar)_x = 0 on one row.
RunResult run_homogenized_1d(const EffectiveMedium& med, const ConstitutiveLaw& law,
                             const Line1D& line,
                             const std::function<PointState(double x)>& initial,
                             const SolverConfig& config,
                             std::optional<FrontLevels> front = std::nullopt);

}  // namespace shocklab

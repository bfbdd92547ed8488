#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "shocklab/media.hpp"
#include "shocklab/state.hpp"

namespace shocklab {

// ---------------------------------------------------------------------------
// Profiles and front tracking
// ---------------------------------------------------------------------------

/// Per-column profile along x.
struct XProfile {
    std::vector<double> x;
    std::vector<double> sigma;
    std::vector<double> u;
};

/// Arithmetic y-mean of sigma and u in every x column.
XProfile y_average(const StateField& state, const ConstitutiveLaw& law);

/// Values along one grid row j.
XProfile row_slice(const StateField& state, const ConstitutiveLaw& law, int j);

/// Scans from the right boundary for the first crossing of the level
/// (sigma_l + sigma_r) / 2 and interpolates linearly between cell centres.
/// Returns nullopt when the profile never crosses the level.
std::optional<double> shock_position(std::span<const double> x, std::span<const double> sigma,
                                     double sigma_l, double sigma_r);
std::optional<double> shock_position(const XProfile& profile, double sigma_l, double sigma_r);

/// Mean over grid rows of the per-row front positions. Differs from the
/// crossing of the y-averaged profile when the front is curved. Returns
/// nullopt if any row has no crossing.
std::optional<double> row_mean_front(const StateField& state, const ConstitutiveLaw& law,
                                     double sigma_l, double sigma_r);

struct FrontTrace {
    std::vector<double> times;
    std::vector<double> positions;
    double fit_window = 0.5;  // trailing fraction of samples used by the fit

    /// Appends a sample; times must be strictly increasing.
    void add(double t, double x);
    std::size_t size() const { return times.size(); }
};

struct SpeedFit {
    double speed = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS deviation from the fitted line
    std::size_t samples = 0;
};

/// Least-squares slope of position against time over the trailing window.
/// Throws InsufficientSamples below five samples in the window.
SpeedFit measure_speed(const FrontTrace& trace);

// ---------------------------------------------------------------------------
// Entropy functional
// ---------------------------------------------------------------------------

enum class KineticTerm {
    full,    // rho (u^2 + v^2) / 2
    x_only,  // rho u^2 / 2
};

/// eta = sum over cells of [rho |u|^2 / 2 + int_0^eps sigma dz] dx dy.
double entropy(const StateField& state, const ConstitutiveLaw& law,
               KineticTerm kinetic = KineticTerm::full);

/// eta(t) together with the accumulated work done through outflow boundaries,
/// so that eta - boundary_work changes only through dissipation.
struct EntropyTrace {
    std::vector<double> times;
    std::vector<double> eta;
    std::vector<double> boundary_work;

    void add(double t, double eta_value, double work = 0.0);
    std::size_t size() const { return times.size(); }
    double eta0() const;
    /// (eta(t) - boundary_work(t)) / eta(0).
    std::vector<double> normalized() const;
    /// 1 - normalized value at the sample matching t_probe; throws ProbeMismatch.
    double loss_at(double t_probe) const;
};

enum class RunClass { shock, regularized, indeterminate };

std::string_view to_string(RunClass c);

struct ClassificationThresholds {
    double tau_abs = 0.01;
    double rho_persist = 0.8;
    double kappa = 0.6;
};

RunClass classify_losses(double coarse_loss, double fine_loss,
                         const ClassificationThresholds& thresholds = {});

struct ResolvedTrace {
    double resolution = 0.0;  // cells per unit length
    EntropyTrace trace;
};

/// Compares the entropy loss at t_probe between the coarsest and finest runs.
RunClass classify_run(std::span<const ResolvedTrace> traces, double t_probe,
                      const ClassificationThresholds& thresholds = {});

}  // namespace shocklab

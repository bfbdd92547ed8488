#include "shocklab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shocklab/errors.hpp"

namespace shocklab {

XProfile y_average(const StateField& state, const ConstitutiveLaw& law) {
    const Grid2D& g = state.grid;
    XProfile p;
    p.x.resize(g.nx);
    p.sigma.assign(g.nx, 0.0);
    p.u.assign(g.nx, 0.0);
    for (int i = 0; i < g.nx; ++i) {
        p.x[i] = g.xc(i);
        double s = 0.0;
        double u = 0.0;
        for (int j = 0; j < g.ny; ++j) {
            s += state.sigma(law, i, j);
            u += state.u(i, j);
        }
        p.sigma[i] = s / g.ny;
        p.u[i] = u / g.ny;
    }
    return p;
}

XProfile row_slice(const StateField& state, const ConstitutiveLaw& law, int j) {
    const Grid2D& g = state.grid;
    if (j < 0 || j >= g.ny) {
        throw InvalidArgument("row index out of range");
    }
    XProfile p;
    p.x.resize(g.nx);
    p.sigma.resize(g.nx);
    p.u.resize(g.nx);
    for (int i = 0; i < g.nx; ++i) {
        p.x[i] = g.xc(i);
        p.sigma[i] = state.sigma(law, i, j);
        p.u[i] = state.u(i, j);
    }
    return p;
}

std::optional<double> shock_position(std::span<const double> x, std::span<const double> sigma,
                                     double sigma_l, double sigma_r) {
    if (sigma_l == sigma_r) {
        throw InvalidArgument("shock_position needs sigma_l != sigma_r");
    }
    if (x.size() != sigma.size()) {
        throw InvalidArgument("profile coordinate and value arrays differ in length");
    }
    const double level = 0.5 * (sigma_l + sigma_r);
    for (std::size_t k = sigma.size(); k-- > 1;) {
        const double right = sigma[k] - level;
        const double left = sigma[k - 1] - level;
        if ((left >= 0.0) != (right >= 0.0)) {
            const double frac = (level - sigma[k - 1]) / (sigma[k] - sigma[k - 1]);
            return x[k - 1] + frac * (x[k] - x[k - 1]);
        }
    }
    return std::nullopt;
}

std::optional<double> shock_position(const XProfile& profile, double sigma_l, double sigma_r) {
    return shock_position(profile.x, profile.sigma, sigma_l, sigma_r);
}

std::optional<double> row_mean_front(const StateField& state, const ConstitutiveLaw& law,
                                     double sigma_l, double sigma_r) {
    double sum = 0.0;
    for (int j = 0; j < state.grid.ny; ++j) {
        const auto x = shock_position(row_slice(state, law, j), sigma_l, sigma_r);
        if (!x) {
            return std::nullopt;
        }
        sum += *x;
    }
    return sum / state.grid.ny;
}

void FrontTrace::add(double t, double x) {
    if (!times.empty() && !(t > times.back())) {
        throw InvalidArgument("front trace times must be strictly increasing");
    }
    times.push_back(t);
    positions.push_back(x);
}

SpeedFit measure_speed(const FrontTrace& trace) {
    const std::size_t n = trace.size();
    const auto window =
        static_cast<std::size_t>(std::ceil(std::clamp(trace.fit_window, 0.0, 1.0) * n));
    if (window < 5) {
        throw InsufficientSamples("speed fit needs at least 5 samples in the window, have " +
                                  std::to_string(window));
    }
    const std::size_t first = n - window;
    double t_mean = 0.0;
    double x_mean = 0.0;
    for (std::size_t k = first; k < n; ++k) {
        t_mean += trace.times[k];
        x_mean += trace.positions[k];
    }
    t_mean /= window;
    x_mean /= window;
    double stt = 0.0;
    double stx = 0.0;
    for (std::size_t k = first; k < n; ++k) {
        const double dt = trace.times[k] - t_mean;
        stt += dt * dt;
        stx += dt * (trace.positions[k] - x_mean);
    }
    SpeedFit fit;
    fit.samples = window;
    fit.speed = stx / stt;
    fit.intercept = x_mean - fit.speed * t_mean;
    double ss = 0.0;
    for (std::size_t k = first; k < n; ++k) {
        const double r = trace.positions[k] - (fit.intercept + fit.speed * trace.times[k]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / window);
    return fit;
}

double entropy(const StateField& state, const ConstitutiveLaw& law, KineticTerm kinetic) {
    const Grid2D& g = state.grid;
    double total = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        double row = 0.0;
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = g.index(i, j);
            const double rho = state.rho[k];
            const double u = state.mom_x[k] / rho;
            const double v = kinetic == KineticTerm::full ? state.mom_y[k] / rho : 0.0;
            row += 0.5 * rho * (u * u + v * v) + stress_potential(law, state.K[k], state.eps[k]);
        }
        total += row;
    }
    return total * g.cell_area();
}

void EntropyTrace::add(double t, double eta_value, double work) {
    times.push_back(t);
    eta.push_back(eta_value);
    boundary_work.push_back(work);
}

double EntropyTrace::eta0() const {
    if (eta.empty()) {
        throw InsufficientSamples("empty entropy trace");
    }
    return eta.front();
}

std::vector<double> EntropyTrace::normalized() const {
    const double e0 = eta0();
    std::vector<double> out(eta.size());
    for (std::size_t k = 0; k < eta.size(); ++k) {
        out[k] = (eta[k] - boundary_work[k]) / e0;
    }
    return out;
}

double EntropyTrace::loss_at(double t_probe) const {
    const double tol = 1e-9 * std::max(1.0, std::fabs(t_probe));
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (std::fabs(times[k] - t_probe) <= tol) {
            return 1.0 - (eta[k] - boundary_work[k]) / eta0();
        }
    }
    throw ProbeMismatch("entropy trace has no sample at t = " + std::to_string(t_probe));
}

std::string_view to_string(RunClass c) {
    switch (c) {
        case RunClass::shock:
            return "shock";
        case RunClass::regularized:
            return "regularized";
        case RunClass::indeterminate:
            return "indeterminate";
    }
    return "unknown";
}

RunClass classify_losses(double coarse_loss, double fine_loss,
                         const ClassificationThresholds& th) {
    if (fine_loss > th.tau_abs && fine_loss >= th.rho_persist * coarse_loss) {
        return RunClass::shock;
    }
    if (fine_loss <= th.kappa * coarse_loss) {
        return RunClass::regularized;
    }
    return RunClass::indeterminate;
}

RunClass classify_run(std::span<const ResolvedTrace> traces, double t_probe,
                      const ClassificationThresholds& thresholds) {
    if (traces.size() < 2) {
        throw InvalidArgument("classification needs traces at two or more resolutions");
    }
    const auto [coarse, fine] = std::minmax_element(
        traces.begin(), traces.end(),
        [](const ResolvedTrace& a, const ResolvedTrace& b) { return a.resolution < b.resolution; });
    if (!(fine->resolution >= 2.0 * coarse->resolution)) {
        throw InvalidArgument("finest and coarsest resolutions must differ by at least 2x");
    }
    return classify_losses(coarse->trace.loss_at(t_probe), fine->trace.loss_at(t_probe), thresholds);
}

}  // namespace shocklab

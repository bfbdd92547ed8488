#include "shocklab/homogenize.hpp"

#include <cmath>
#include <numbers>

#include "shocklab/errors.hpp"
#include "shocklab/quadrature.hpp"

namespace shocklab {

double phase_average(const MediumSpec& spec, const std::function<double(Material, double)>& f,
                     Averaging method) {
    if (spec.profile == Profile::layered && method == Averaging::closed_form) {
        // Piecewise constant: exact two-term sum, with xi at each layer midpoint.
        const double phi = spec.fraction;
        const double xa = 0.5 * phi * spec.period;
        const double xb = (phi + 0.5 * (1.0 - phi)) * spec.period;
        return phi * f({spec.K_A, spec.rho_A}, xa) + (1.0 - phi) * f({spec.K_B, spec.rho_B}, xb);
    }
    const auto breaks = phase_breakpoints(spec);
    return period_mean([&](double xi) { return f(material_at_phase(spec, xi), xi); }, spec.period,
                       breaks);
}

double effective_density(double rho_h, double rho_m, double theta_deg) {
    const double theta = theta_deg * std::numbers::pi / 180.0;
    double c = std::cos(theta);
    double s = std::sin(theta);
    if (theta_deg == 90.0) {
        c = 0.0;
        s = 1.0;
    }
    return 1.0 / (c * c / rho_h + s * s / rho_m);
}

EffectiveMedium effective_parameters(const MediumSpec& spec, Averaging method) {
    spec.validate();
    EffectiveMedium med;
    med.theta_deg = spec.theta_deg;
    if (spec.is_homogeneous() && method == Averaging::closed_form) {
        med.K_bar = spec.K_A;
        med.rho_m = med.rho_h = med.rho_bar = spec.rho_A;
    } else {
        med.K_bar = 1.0 / phase_average(spec, [](Material m, double) { return 1.0 / m.K; }, method);
        med.rho_m = phase_average(spec, [](Material m, double) { return m.rho; }, method);
        med.rho_h = 1.0 / phase_average(spec, [](Material m, double) { return 1.0 / m.rho; }, method);
        med.rho_bar = effective_density(med.rho_h, med.rho_m, spec.theta_deg);
    }
    med.c_eff = std::sqrt(med.K_bar / med.rho_m);
    return med;
}

double effective_density(const MediumSpec& spec, double theta_deg) {
    if (!(theta_deg >= 0.0 && theta_deg <= 90.0)) {
        throw InvalidArgument("theta must lie in [0, 90] degrees");
    }
    MediumSpec rotated = spec;
    rotated.theta_deg = theta_deg;
    return effective_parameters(rotated).rho_bar;
}

HomogenizedSystem homogenized_system(const EffectiveMedium& med, const ConstitutiveLaw& law) {
    return {med.K_bar, med.rho_bar, law};
}

}  // namespace shocklab

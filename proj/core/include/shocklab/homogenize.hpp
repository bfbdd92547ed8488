#pragma once

#include <functional>

#include "shocklab/media.hpp"

namespace shocklab {

/// Leading-order effective parameters of a periodic medium at angle theta.
struct EffectiveMedium {
    double theta_deg = 90.0;
    double K_bar = 1.0;    // harmonic mean of K
    double rho_m = 1.0;    // arithmetic mean of rho
    double rho_h = 1.0;    // harmonic mean of rho
    double rho_bar = 1.0;  // (cos^2/rho_h + sin^2/rho_m)^{-1}
    double c_eff = 1.0;    // sqrt(K_bar / rho_m)
};

enum class Averaging {
    closed_form,  // exact layer sums for layered media, quadrature otherwise
    quadrature,   // composite midpoint + Richardson for every profile
};

/// Mean of f(material(xi), xi) over one period of xi.
double phase_average(const MediumSpec& spec, const std::function<double(Material, double)>& f,
                     Averaging method = Averaging::closed_form);

EffectiveMedium effective_parameters(const MediumSpec& spec,
                                     Averaging method = Averaging::closed_form);

double effective_density(double rho_h, double rho_m, double theta_deg);
double effective_density(const MediumSpec& spec, double theta_deg);

/// eps_t - u_x = 0, rho_bar u_t - sigma_bar(eps)_x = 0 with sigma_bar(eps) =
/// shat(K_bar eps): a homogeneous 1D medium the solver can run directly.
struct HomogenizedSystem {
    double K_bar = 1.0;
    double rho_bar = 1.0;
    ConstitutiveLaw law = ConstitutiveLaw::exponential();

    double stress(double eps) const { return shocklab::stress(law, K_bar, eps); }
    double strain(double sigma) const { return inverse_stress(law, K_bar, sigma); }
    double characteristic_speed(double eps) const { return sound_speed(law, K_bar, rho_bar, eps); }
    Material material() const { return {K_bar, rho_bar}; }
    MediumSpec as_medium() const { return MediumSpec::homogeneous(K_bar, rho_bar); }
};

HomogenizedSystem homogenized_system(const EffectiveMedium& med, const ConstitutiveLaw& law);

}  // namespace shocklab

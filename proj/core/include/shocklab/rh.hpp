#pragma once

#include "shocklab/homogenize.hpp"
#include "shocklab/media.hpp"

namespace shocklab {

// Jumps follow [q] = q_l - q_r throughout.

enum class Direction { left, right };

/// s = +-sqrt([sigma_bar] / (rho_bar [eps])) for the homogenized system, with
/// eps_{l,r} = sigma_bar^{-1}(sigma_{l,r}) at K_bar.
double effective_shock_speed(double sigma_l, double sigma_r, const ConstitutiveLaw& law,
                             const EffectiveMedium& med, Direction direction);

struct ShockSetup {
    double sigma_l = 0.0;
    double sigma_r = 0.0;
    double eps_l = 0.0;
    double eps_r = 0.0;
    double u_l = 0.0;
    double u_r = 0.0;
    double s_eff = 0.0;
    double rho_bar = 1.0;
    double K_bar = 1.0;

    /// Residuals of s[eps] + [u] = 0 and rho_bar s [u] + [sigma] = 0.
    double mass_residual() const;
    double momentum_residual() const;
};

/// Right-going shock: u_l = u_r - sqrt([sigma_bar][eps] / rho_bar).
ShockSetup connect_right_going(double sigma_l, double sigma_r, double u_r,
                               const ConstitutiveLaw& law, const EffectiveMedium& med);

/// Transverse formula s = sqrt(H / rho_m), where H is the harmonic xi-average of
/// the local chord slope [sigma]/[eps](xi).
double legacy_transverse_speed(const MediumSpec& spec, const ConstitutiveLaw& law, double sigma_l,
                               double sigma_r);

/// Harmonic xi-average of the downstream sound speed c(xi) at stress sigma_r.
double threshold_ch(const MediumSpec& spec, const ConstitutiveLaw& law, double sigma_r);

enum class MeanSpeedVariant {
    sound_speed,    // arithmetic mean of c(xi)
    literal_ratio,  // arithmetic mean of sigma_eps / rho (a squared speed)
};

double threshold_cm(const MediumSpec& spec, const ConstitutiveLaw& law, double sigma_r,
                    MeanSpeedVariant variant = MeanSpeedVariant::sound_speed);

/// sqrt(K_bar shat'(K_bar eps) / rho_bar) at the strain carrying stress sigma;
/// the small-jump limit of the effective shock speed.
double homogenized_characteristic_speed(double sigma, const ConstitutiveLaw& law,
                                        const EffectiveMedium& med);

/// Solves effective_shock_speed(sigma_l, sigma_r) = target_speed for sigma_l >
/// sigma_r by bracketing and bisection. Throws NonPhysicalJump when the target
/// is not reachable (below the characteristic speed or beyond the bracket).
double sigma_l_for_speed(double target_speed, double sigma_r, const ConstitutiveLaw& law,
                         const EffectiveMedium& med);

}  // namespace shocklab

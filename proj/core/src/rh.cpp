#include "shocklab/rh.hpp"

#include <cmath>
#include <string>

#include "shocklab/errors.hpp"

namespace shocklab {

namespace {

struct JumpStrains {
    double eps_l;
    double eps_r;
};

JumpStrains homogenized_strains(double sigma_l, double sigma_r, const ConstitutiveLaw& law,
                                const EffectiveMedium& med) {
    if (sigma_l == sigma_r) {
        throw DegenerateShock("sigma_l == sigma_r: no jump to propagate");
    }
    return {inverse_stress(law, med.K_bar, sigma_l), inverse_stress(law, med.K_bar, sigma_r)};
}

double squared_speed(double sigma_l, double sigma_r, const JumpStrains& e, double rho) {
    const double jump_eps = e.eps_l - e.eps_r;
    if (jump_eps == 0.0) {
        throw DegenerateShock("strain jump vanished for distinct stresses");
    }
    const double ratio = (sigma_l - sigma_r) / (rho * jump_eps);
    if (!(ratio > 0.0)) {
        throw NonPhysicalJump("[sigma]/[eps] <= 0: the chord slope is not positive");
    }
    return ratio;
}

double local_speed(const Material& m, double g) {
    if (!(g > 0.0)) {
        throw HyperbolicityLoss("G(sigma_r) <= 0");
    }
    return std::sqrt(m.K * g / m.rho);
}

}  // namespace

double effective_shock_speed(double sigma_l, double sigma_r, const ConstitutiveLaw& law,
                             const EffectiveMedium& med, Direction direction) {
    const auto strains = homogenized_strains(sigma_l, sigma_r, law, med);
    const double s = std::sqrt(squared_speed(sigma_l, sigma_r, strains, med.rho_bar));
    return direction == Direction::right ? s : -s;
}

double ShockSetup::mass_residual() const { return s_eff * (eps_l - eps_r) + (u_l - u_r); }

double ShockSetup::momentum_residual() const {
    return rho_bar * s_eff * (u_l - u_r) + (sigma_l - sigma_r);
}

ShockSetup connect_right_going(double sigma_l, double sigma_r, double u_r,
                               const ConstitutiveLaw& law, const EffectiveMedium& med) {
    const auto strains = homogenized_strains(sigma_l, sigma_r, law, med);
    ShockSetup setup;
    setup.sigma_l = sigma_l;
    setup.sigma_r = sigma_r;
    setup.eps_l = strains.eps_l;
    setup.eps_r = strains.eps_r;
    setup.u_r = u_r;
    setup.rho_bar = med.rho_bar;
    setup.K_bar = med.K_bar;
    setup.s_eff = std::sqrt(squared_speed(sigma_l, sigma_r, strains, med.rho_bar));
    // [u] = -s [eps]; for a compressive jump ([eps] > 0) this is
    // -sqrt([sigma][eps] / rho_bar).
    setup.u_l = u_r - setup.s_eff * (strains.eps_l - strains.eps_r);
    return setup;
}

double legacy_transverse_speed(const MediumSpec& spec, const ConstitutiveLaw& law, double sigma_l,
                               double sigma_r) {
    spec.validate();
    if (sigma_l == sigma_r) {
        throw DegenerateShock("sigma_l == sigma_r: no jump to propagate");
    }
    const double jump_sigma = sigma_l - sigma_r;
    const double jump_w = law.reduced_inverse(sigma_l) - law.reduced_inverse(sigma_r);
    if (jump_w == 0.0 || !(jump_sigma / jump_w > 0.0)) {
        throw NonPhysicalJump("[sigma]/[eps] <= 0: the chord slope is not positive");
    }
    // Local strain jump is [w] / K(xi), so the chord slope is [sigma] K(xi) / [w].
    const double inv_slope_mean =
        phase_average(spec, [&](Material m, double) { return jump_w / (jump_sigma * m.K); });
    const double rho_m = phase_average(spec, [](Material m, double) { return m.rho; });
    return std::sqrt(1.0 / (inv_slope_mean * rho_m));
}

double threshold_ch(const MediumSpec& spec, const ConstitutiveLaw& law, double sigma_r) {
    spec.validate();
    const double g = g_of_sigma(law, sigma_r);
    const double inv_mean =
        phase_average(spec, [&](Material m, double) { return 1.0 / local_speed(m, g); });
    return 1.0 / inv_mean;
}

double threshold_cm(const MediumSpec& spec, const ConstitutiveLaw& law, double sigma_r,
                    MeanSpeedVariant variant) {
    spec.validate();
    const double g = g_of_sigma(law, sigma_r);
    if (variant == MeanSpeedVariant::literal_ratio) {
        if (!(g > 0.0)) {
            throw HyperbolicityLoss("G(sigma_r) <= 0");
        }
        return phase_average(spec, [&](Material m, double) { return m.K * g / m.rho; });
    }
    return phase_average(spec, [&](Material m, double) { return local_speed(m, g); });
}

double homogenized_characteristic_speed(double sigma, const ConstitutiveLaw& law,
                                        const EffectiveMedium& med) {
    return sound_speed(law, med.K_bar, med.rho_bar, inverse_stress(law, med.K_bar, sigma));
}

double sigma_l_for_speed(double target_speed, double sigma_r, const ConstitutiveLaw& law,
                         const EffectiveMedium& med) {
    const double floor_speed = homogenized_characteristic_speed(sigma_r, law, med);
    if (!(target_speed > floor_speed)) {
        throw NonPhysicalJump("target speed " + std::to_string(target_speed) +
                              " does not exceed the downstream characteristic speed " +
                              std::to_string(floor_speed));
    }
    auto speed = [&](double sigma_l) {
        return effective_shock_speed(sigma_l, sigma_r, law, med, Direction::right);
    };
    double lo = sigma_r;
    double step = std::max(1.0, std::fabs(sigma_r));
    double hi = sigma_r + step;
    int expansions = 0;
    while (speed(hi) < target_speed) {
        lo = hi;
        step *= 2.0;
        hi = sigma_r + step;
        if (++expansions > 60) {
            throw NonPhysicalJump("target speed not reachable by any finite sigma_l");
        }
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(hi)); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid == sigma_r || speed(mid) < target_speed) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace shocklab

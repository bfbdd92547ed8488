#include "shocklab/media.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "shocklab/errors.hpp"

namespace shocklab {

std::string_view to_string(Profile p) {
    switch (p) {
        case Profile::layered:
            return "layered";
        case Profile::sinusoidal:
            return "sinusoidal";
    }
    return "unknown";
}

Profile profile_from_string(std::string_view s) {
    if (s == "layered") {
        return Profile::layered;
    }
    if (s == "sinusoidal") {
        return Profile::sinusoidal;
    }
    throw InvalidArgument("unknown medium profile '" + std::string(s) + "'");
}

void MediumSpec::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(K_A) || !positive(K_B) || !positive(rho_A) || !positive(rho_B)) {
        throw InvalidArgument("bulk moduli and densities must be strictly positive");
    }
    if (!positive(period)) {
        throw InvalidArgument("medium period must be strictly positive");
    }
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw InvalidArgument("layer fraction must lie in (0, 1)");
    }
    if (!(theta_deg >= 0.0 && theta_deg <= 90.0)) {
        throw InvalidArgument("theta must lie in [0, 90] degrees");
    }
}

MediumSpec MediumSpec::homogeneous(double K, double rho) {
    MediumSpec spec;
    spec.K_A = spec.K_B = K;
    spec.rho_A = spec.rho_B = rho;
    return spec;
}

double Material::linear_speed() const { return std::sqrt(K / rho); }

double Material::linear_impedance() const { return std::sqrt(K * rho); }

double phase_coordinate(const MediumSpec& spec, double x, double y) {
    const double theta = spec.theta_deg * std::numbers::pi / 180.0;
    // Exact values at the two axis-aligned angles keep those media exactly
    // independent of the other coordinate.
    if (spec.theta_deg == 90.0) {
        return x;
    }
    if (spec.theta_deg == 0.0) {
        return y;
    }
    return x * std::sin(theta) + y * std::cos(theta);
}

Material material_at_phase(const MediumSpec& spec, double xi) {
    switch (spec.profile) {
        case Profile::layered: {
            double r = std::fmod(xi, spec.period);
            if (r < 0.0) {
                r += spec.period;
            }
            return r / spec.period < spec.fraction ? Material{spec.K_A, spec.rho_A}
                                                   : Material{spec.K_B, spec.rho_B};
        }
        case Profile::sinusoidal: {
            const double s = std::sin(2.0 * std::numbers::pi * xi / spec.period);
            return {0.5 * (spec.K_A + spec.K_B) + 0.5 * std::fabs(spec.K_A - spec.K_B) * s,
                    0.5 * (spec.rho_A + spec.rho_B) + 0.5 * std::fabs(spec.rho_A - spec.rho_B) * s};
        }
    }
    throw InvalidArgument("unknown medium profile");
}

Material material_at(const MediumSpec& spec, double x, double y) {
    return material_at_phase(spec, phase_coordinate(spec, x, y));
}

std::vector<double> phase_breakpoints(const MediumSpec& spec) {
    if (spec.profile == Profile::layered) {
        return {spec.fraction * spec.period};
    }
    return {};
}

// ---------------------------------------------------------------------------

std::string_view to_string(LawKind k) {
    switch (k) {
        case LawKind::exponential:
            return "exponential";
        case LawKind::cubic:
            return "cubic";
    }
    return "unknown";
}

LawKind law_kind_from_string(std::string_view s) {
    if (s == "exponential" || s == "exp") {
        return LawKind::exponential;
    }
    if (s == "cubic") {
        return LawKind::cubic;
    }
    throw InvalidArgument("unknown constitutive law '" + std::string(s) + "'");
}

ConstitutiveLaw ConstitutiveLaw::exponential() {
    return {LawKind::exponential, 1.0, 0.0, 0.0, -std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
}

ConstitutiveLaw ConstitutiveLaw::cubic(double alpha, double beta, double gamma, double w_min,
                                       double w_max) {
    if (!(w_min < w_max)) {
        throw InvalidArgument("cubic law needs w_min < w_max");
    }
    // shat'(w) = alpha + 2 beta w + 3 gamma w^2 must stay positive on the range.
    auto slope = [&](double w) { return alpha + 2.0 * beta * w + 3.0 * gamma * w * w; };
    double lowest = std::numeric_limits<double>::infinity();
    auto consider_end = [&](double w, double direction) {
        if (std::isfinite(w)) {
            lowest = std::min(lowest, slope(w));
        } else if (gamma < 0.0 || (gamma == 0.0 && beta * direction < 0.0)) {
            lowest = -std::numeric_limits<double>::infinity();
        }
    };
    consider_end(w_min, -1.0);
    consider_end(w_max, 1.0);
    if (gamma != 0.0) {
        const double vertex = -beta / (3.0 * gamma);
        if (vertex > w_min && vertex < w_max) {
            lowest = std::min(lowest, slope(vertex));
        }
    } else if (beta == 0.0) {
        lowest = std::min(lowest, alpha);
    }
    if (!(lowest > 0.0)) {
        throw InvalidArgument("cubic law is not strictly increasing on the requested strain range");
    }
    return {LawKind::cubic, alpha, beta, gamma, w_min, w_max};
}

double ConstitutiveLaw::reduced_stress(double w) const {
    switch (kind_) {
        case LawKind::exponential:
            return std::expm1(w);
        case LawKind::cubic:
            return w * (alpha_ + w * (beta_ + w * gamma_));
    }
    return 0.0;
}

double ConstitutiveLaw::reduced_slope(double w) const {
    switch (kind_) {
        case LawKind::exponential:
            return std::exp(w);
        case LawKind::cubic:
            return alpha_ + w * (2.0 * beta_ + 3.0 * gamma_ * w);
    }
    return 0.0;
}

double ConstitutiveLaw::reduced_potential(double w) const {
    switch (kind_) {
        case LawKind::exponential:
            if (std::fabs(w) < 1e-3) {
                // e^w - 1 - w loses digits near 0; Taylor series to w^6.
                return w * w * (0.5 + w * (1.0 / 6 + w * (1.0 / 24 + w * (1.0 / 120 + w / 720))));
            }
            return std::expm1(w) - w;
        case LawKind::cubic:
            return w * w * (alpha_ / 2.0 + w * (beta_ / 3.0 + w * gamma_ / 4.0));
    }
    return 0.0;
}

double ConstitutiveLaw::reduced_inverse(double sigma) const {
    if (!std::isfinite(sigma)) {
        throw OutOfRange("non-finite stress");
    }
    if (kind_ == LawKind::exponential) {
        if (!(sigma > -1.0)) {
            throw OutOfRange("exponential law requires sigma > -1, got " + std::to_string(sigma));
        }
        return std::log1p(sigma);
    }
    if (sigma == 0.0) {
        return 0.0;
    }

    auto residual = [&](double w) { return reduced_stress(w) - sigma; };
    double guess = alpha_ > 0.0 ? sigma / alpha_ : sigma;

    // Bracket the root around the linearized guess; shat is increasing.
    double lo = 0.0;
    double hi = 0.0;
    {
        double step = std::max(1.0, std::fabs(guess));
        const double f0 = residual(0.0);
        const double direction = f0 < 0.0 ? 1.0 : -1.0;
        double far = direction * step;
        int expansions = 0;
        while ((residual(far) < 0.0) == (f0 < 0.0)) {
            if (++expansions > 200) {
                throw BracketFailure("could not bracket cubic inverse for sigma = " +
                                     std::to_string(sigma));
            }
            step *= 2.0;
            far = direction * step;
        }
        lo = std::min(0.0, far);
        hi = std::max(0.0, far);
    }
    double w = std::clamp(guess, lo, hi);

    for (int iter = 0; iter < 100; ++iter) {
        const double f = residual(w);
        if (f == 0.0) {
            break;
        }
        if (f < 0.0) {
            lo = w;
        } else {
            hi = w;
        }
        const double slope = reduced_slope(w);
        double next = slope > 0.0 ? w - f / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const double change = std::fabs(next - w);
        w = next;
        if (change <= 1e-15 * std::max(1.0, std::fabs(w)) || hi - lo <= 1e-15 * std::max(1.0, std::fabs(w))) {
            break;
        }
        if (iter == 99) {
            throw BracketFailure("cubic inverse did not converge for sigma = " + std::to_string(sigma));
        }
    }
    if (w < w_min_ || w > w_max_) {
        throw OutOfRange("stress " + std::to_string(sigma) +
                         " maps outside the strain range on which the cubic law is monotone");
    }
    return w;
}

double stress(const ConstitutiveLaw& law, double K, double eps) { return law.reduced_stress(K * eps); }

double sound_speed(const ConstitutiveLaw& law, double K, double rho, double eps) {
    const double slope = law.reduced_slope(K * eps);
    if (!(slope > 0.0)) {
        throw HyperbolicityLoss("sigma_eps <= 0 at K*eps = " + std::to_string(K * eps));
    }
    return std::sqrt(K * slope / rho);
}

double inverse_stress(const ConstitutiveLaw& law, double K, double sigma) {
    return law.reduced_inverse(sigma) / K;
}

double g_of_sigma(const ConstitutiveLaw& law, double sigma) {
    return law.reduced_slope(law.reduced_inverse(sigma));
}

double stress_potential(const ConstitutiveLaw& law, double K, double eps) {
    return law.reduced_potential(K * eps) / K;
}

NormalizedMedium normalize(const MediumSpec& spec) {
    spec.validate();
    NormalizedMedium out{spec, {}};
    out.spec.K_A = 1.0;
    out.spec.rho_A = 1.0;
    out.spec.K_B = spec.K_B / spec.K_A;
    out.spec.rho_B = spec.rho_B / spec.rho_A;

    Scaling& s = out.scaling;
    s.K_A = spec.K_A;
    s.rho_A = spec.rho_A;
    s.strain_scale = spec.K_A;
    s.stress_scale = spec.K_A / spec.rho_A;
    s.time_scale = std::sqrt(spec.K_A / spec.rho_A);
    s.speed_scale = std::sqrt(spec.K_A / spec.rho_A);
    s.velocity_scale = std::sqrt(spec.K_A * spec.rho_A);
    return out;
}

}  // namespace shocklab

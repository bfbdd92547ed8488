#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace shocklab {

// ---------------------------------------------------------------------------
// Periodic media
// ---------------------------------------------------------------------------

enum class Profile { layered, sinusoidal };

std::string_view to_string(Profile p);
Profile profile_from_string(std::string_view s);

/// Two-material medium that varies only along xi = x sin(theta) + y cos(theta),
/// with period `period` in xi. theta = 90 deg puts the layers across the x axis
/// (transverse propagation), theta = 0 makes them parallel to it.
struct MediumSpec {
    Profile profile = Profile::layered;
    double theta_deg = 90.0;
    double period = 1.0;
    double K_A = 1.0;
    double K_B = 1.0;
    double rho_A = 1.0;
    double rho_B = 1.0;
    double fraction = 0.5;  // volume fraction of A, layered only

    /// Throws InvalidArgument when any invariant is violated.
    void validate() const;

    bool is_homogeneous() const { return K_A == K_B && rho_A == rho_B; }

    static MediumSpec homogeneous(double K, double rho);
};

struct Material {
    double K;
    double rho;

    double linear_speed() const;
    double linear_impedance() const;
};

/// xi = x sin(theta) + y cos(theta).
double phase_coordinate(const MediumSpec& spec, double x, double y);

/// Material at a given xi. Layer A covers [0, fraction * period) of every period.
Material material_at_phase(const MediumSpec& spec, double xi);

Material material_at(const MediumSpec& spec, double x, double y);

/// Interior xi positions in [0, period) where the material is discontinuous.
std::vector<double> phase_breakpoints(const MediumSpec& spec);

// ---------------------------------------------------------------------------
// Constitutive laws sigma = shat(K * eps)
// ---------------------------------------------------------------------------

enum class LawKind { exponential, cubic };

std::string_view to_string(LawKind k);
LawKind law_kind_from_string(std::string_view s);

/// The reduced law shat(w) with w = K eps. Cubic laws are checked for strict
/// monotonicity on [w_min, w_max] when they are built.
class ConstitutiveLaw {
  public:
    static ConstitutiveLaw exponential();
    static ConstitutiveLaw cubic(double alpha, double beta, double gamma,
                                 double w_min = -std::numeric_limits<double>::infinity(),
                                 double w_max = std::numeric_limits<double>::infinity());
    /// shat(w) = w, i.e. linear acoustics.
    static ConstitutiveLaw linear() { return cubic(1.0, 0.0, 0.0); }

    LawKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }

    double reduced_stress(double w) const;
    double reduced_slope(double w) const;
    /// Integral of shat from 0 to w.
    double reduced_potential(double w) const;
    /// shat^{-1}(sigma). Closed form for the exponential law; safeguarded Newton
    /// with bisection fallback for cubics.
    double reduced_inverse(double sigma) const;

    friend bool operator==(const ConstitutiveLaw&, const ConstitutiveLaw&) = default;

  private:
    ConstitutiveLaw(LawKind kind, double a, double b, double c, double lo, double hi)
        : kind_(kind), alpha_(a), beta_(b), gamma_(c), w_min_(lo), w_max_(hi) {}

    LawKind kind_;
    double alpha_;
    double beta_;
    double gamma_;
    double w_min_;
    double w_max_;
};

double stress(const ConstitutiveLaw& law, double K, double eps);

/// sqrt(K shat'(K eps) / rho); throws HyperbolicityLoss when shat' <= 0.
double sound_speed(const ConstitutiveLaw& law, double K, double rho, double eps);

double inverse_stress(const ConstitutiveLaw& law, double K, double sigma);

/// G(sigma) = shat'(shat^{-1}(sigma)), so that d sigma / d eps = G(sigma) K.
double g_of_sigma(const ConstitutiveLaw& law, double sigma);

/// Integral of sigma(z) dz from 0 to eps at fixed K.
double stress_potential(const ConstitutiveLaw& law, double K, double eps);

// ---------------------------------------------------------------------------
// Normalization to (K_A, rho_A) = (1, 1)
// ---------------------------------------------------------------------------

/// Factors linking a medium to its normalized form. The constitutive law stays
/// shat, so stress values are unchanged when time is rescaled by `time_scale`;
/// `stress_scale` is the factor for the alternative convention that keeps t and
/// folds K_A / rho_A into the stress.
struct Scaling {
    double K_A = 1.0;
    double rho_A = 1.0;
    double strain_scale = 1.0;    // eps_n = strain_scale * eps
    double stress_scale = 1.0;    // K_A / rho_A
    double time_scale = 1.0;      // t_n = time_scale * t
    double speed_scale = 1.0;     // s = speed_scale * s_n
    double velocity_scale = 1.0;  // u_n = velocity_scale * u
};

struct NormalizedMedium {
    MediumSpec spec;
    Scaling scaling;
};

NormalizedMedium normalize(const MediumSpec& spec);

}  // namespace shocklab

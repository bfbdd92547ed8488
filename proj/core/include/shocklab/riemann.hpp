#pragma once

#include <array>

#include "shocklab/media.hpp"

namespace shocklab {

enum class SweepAxis { x, y };

/// Conserved vector (eps, rho u, rho v) of one cell.
struct Conserved {
    double eps = 0.0;
    double mom_x = 0.0;
    double mom_y = 0.0;
};

/// f-wave decomposition of the flux difference across one interface. Waves
/// are stored in (eps, rho u, rho v) components; the momentum component
/// transverse to the sweep is always zero.
struct FWaves {
    std::array<double, 3> left_going{};   // travels at left_speed = -c_l
    std::array<double, 3> right_going{};  // travels at right_speed = +c_r
    double left_speed = 0.0;
    double right_speed = 0.0;

    /// A^- dq and A^+ dq: the fluctuations sent into the left and right cells.
    const std::array<double, 3>& left_fluctuation() const { return left_going; }
    const std::array<double, 3>& right_fluctuation() const { return right_going; }
};

/// Splits delta = f(q_r, mat_r) - f(q_l, mat_l) with f = (-u_n, -sigma) on the
/// (eps, rho u_n) subsystem into delta = b1 (1, Z_l) + b2 (1, -Z_r), using each
/// side's own sound speed and impedance. Throws HyperbolicityLoss.
FWaves riemann_sweep(const Conserved& q_l, const Conserved& q_r, const Material& mat_l,
                     const Material& mat_r, const ConstitutiveLaw& law, SweepAxis axis);

}  // namespace shocklab

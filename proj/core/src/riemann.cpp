#include "shocklab/riemann.hpp"

#include "shocklab/errors.hpp"

namespace shocklab {

FWaves riemann_sweep(const Conserved& q_l, const Conserved& q_r, const Material& mat_l,
                     const Material& mat_r, const ConstitutiveLaw& law, SweepAxis axis) {
    const int normal = axis == SweepAxis::x ? 1 : 2;
    const double m_l = axis == SweepAxis::x ? q_l.mom_x : q_l.mom_y;
    const double m_r = axis == SweepAxis::x ? q_r.mom_x : q_r.mom_y;

    const double c_l = sound_speed(law, mat_l.K, mat_l.rho, q_l.eps);
    const double c_r = sound_speed(law, mat_r.K, mat_r.rho, q_r.eps);
    const double Z_l = mat_l.rho * c_l;
    const double Z_r = mat_r.rho * c_r;

    // delta = f(q_r) - f(q_l) with f = (-u_n, -sigma).
    const double d1 = m_l / mat_l.rho - m_r / mat_r.rho;
    const double d2 = stress(law, mat_l.K, q_l.eps) - stress(law, mat_r.K, q_r.eps);

    const double b1 = (d2 + Z_r * d1) / (Z_l + Z_r);
    const double b2 = (Z_l * d1 - d2) / (Z_l + Z_r);

    FWaves w;
    w.left_speed = -c_l;
    w.right_speed = c_r;
    w.left_going[0] = b1;
    w.left_going[normal] = b1 * Z_l;
    w.right_going[0] = b2;
    w.right_going[normal] = -b2 * Z_r;
    return w;
}

}  // namespace shocklab

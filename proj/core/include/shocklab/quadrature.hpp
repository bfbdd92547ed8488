#pragma once

#include <functional>
#include <span>

namespace shocklab {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int initial_panels = 16;
    int max_panels = 1 << 22;
};

/// Integral of f over [a, b] by the composite midpoint rule, doubling the panel
/// count and applying one Richardson step until successive extrapolated values
/// agree to `abs_tol`. Throws QuadratureError when `max_panels` is exceeded.
double integrate_midpoint(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& opts = {});

/// Mean of f over [0, period], integrated piecewise between the sorted interior
/// breakpoints so that discontinuities of a layered medium land on panel edges.
double period_mean(const std::function<double(double)>& f, double period,
                   std::span<const double> breakpoints = {}, const QuadratureOptions& opts = {});

}  // namespace shocklab

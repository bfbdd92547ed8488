#include "shocklab/quadrature.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "shocklab/errors.hpp"

namespace shocklab {

namespace {

double midpoint_sum(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double sum = 0.0;
    double comp = 0.0;  // Neumaier compensation
    for (int k = 0; k < panels; ++k) {
        const double v = f(a + (k + 0.5) * h);
        const double t = sum + v;
        comp += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    return (sum + comp) * h;
}

}  // namespace

double integrate_midpoint(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& opts) {
    if (b == a) {
        return 0.0;
    }
    int panels = opts.initial_panels;
    double coarse = midpoint_sum(f, a, b, panels);
    double previous = coarse;
    while (true) {
        panels *= 2;
        if (panels > opts.max_panels) {
            throw QuadratureError("midpoint quadrature did not reach tolerance " +
                                  std::to_string(opts.abs_tol));
        }
        const double fine = midpoint_sum(f, a, b, panels);
        const double extrapolated = (4.0 * fine - coarse) / 3.0;
        if (!std::isfinite(extrapolated)) {
            throw QuadratureError("non-finite integrand value");
        }
        if (std::fabs(extrapolated - previous) <= opts.abs_tol) {
            return extrapolated;
        }
        previous = extrapolated;
        coarse = fine;
    }
}

double period_mean(const std::function<double(double)>& f, double period,
                   std::span<const double> breakpoints, const QuadratureOptions& opts) {
    std::vector<double> edges;
    edges.reserve(breakpoints.size() + 2);
    edges.push_back(0.0);
    for (double p : breakpoints) {
        if (p > 0.0 && p < period) {
            edges.push_back(p);
        }
    }
    edges.push_back(period);

    QuadratureOptions piece_opts = opts;
    piece_opts.abs_tol = opts.abs_tol * period / static_cast<double>(edges.size() - 1);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        total += integrate_midpoint(f, edges[k], edges[k + 1], piece_opts);
    }
    return total / period;
}

}  // namespace shocklab

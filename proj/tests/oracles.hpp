#pragma once

// Independent reference computations. Nothing here calls into the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

// Plain bisection on [a, b]; f(a) and f(b) must have opposite signs.
inline double bisect(const std::function<double(double)>& f, double a, double b, int iters = 200) {
    double fa = f(a);
    for (int k = 0; k < iters; ++k) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

namespace detail {
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

// Adaptive Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-13, int depth = 50) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Piecewise Simpson over sub-intervals split at the given interior points.
inline double simpson_pieces(const std::function<double(double)>& f, std::vector<double> cuts,
                             double a, double b) {
    cuts.insert(cuts.begin(), a);
    cuts.push_back(b);
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) s += simpson(f, cuts[k], cuts[k + 1]);
    return s;
}

// Brute-force period average by a fine Riemann sum (layered checks).
inline double riemann_mean(const std::function<double(double)>& f, double period, int n = 2'000'000) {
    long double s = 0.0L;
    const double h = period / n;
    for (int k = 0; k < n; ++k) s += f((k + 0.5) * h);
    return static_cast<double>(s / n);
}

// Solve [[a, b], [c, d]] x = r by Cramer's rule.
inline void solve2(double a, double b, double c, double d, double r1, double r2, double& x1,
                   double& x2) {
    const double det = a * d - b * c;
    x1 = (r1 * d - b * r2) / det;
    x2 = (a * r2 - c * r1) / det;
}

struct Line {
    double slope;
    double intercept;
};

// Least squares via the normal equations.
inline Line lsq(const std::vector<double>& t, const std::vector<double>& x) {
    double st = 0, sx = 0, stt = 0, stx = 0;
    const double n = static_cast<double>(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        st += t[k];
        sx += x[k];
        stt += t[k] * t[k];
        stx += t[k] * x[k];
    }
    double m, b;
    solve2(stt, st, st, n, stx, sx, m, b);
    return {m, b};
}

// Linear acoustics with rho = 1: eps_t = u_x, u_t = K eps_x, c = sqrt(K).
// eps = F(x + ct) + G(x - ct), u = c F(x + ct) - c G(x - ct).
inline void dalembert(const std::function<double(double)>& eps0,
                      const std::function<double(double)>& u0, double K, double x, double t,
                      double& eps, double& u) {
    const double c = std::sqrt(K);
    const double xp = x + c * t;
    const double xm = x - c * t;
    eps = 0.5 * (eps0(xp) + eps0(xm)) + (u0(xp) - u0(xm)) / (2.0 * c);
    u = 0.5 * (u0(xp) + u0(xm)) + 0.5 * c * (eps0(xp) - eps0(xm));
}

// Seeded generator for property tests.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  private:
    std::mt19937_64 gen_;
};

}  // namespace oracle

#pragma once

// Test-only reference computations. Nothing here calls into the operator or
// moment code paths it is used to check.

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// Centered B-spline via truncated powers:
// B_h(x) = 1/(h-1)! sum_j (-1)^j C(h,j) (x + h/2 - j)_+^{h-1}.
inline double bspline_truncated_power(int h, double x) {
  if (h == 1) {
    const double ax = std::abs(x);
    return ax < 0.5 ? 1.0 : (ax == 0.5 ? 0.5 : 0.0);
  }
  if (std::abs(x) >= 0.5 * h) return 0.0;
  double fact = 1.0;
  for (int i = 2; i <= h - 1; ++i) fact *= i;
  double sum = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= h; ++j) {
    const double t = x + 0.5 * h - j;
    if (t > 0.0) sum += ((j % 2) ? -1.0 : 1.0) * binom * std::pow(t, h - 1);
    binom = binom * (h - j) / (j + 1);
  }
  return sum / fact;
}

// Adaptive Gauss-Kronrod integral of f over [a, b], split at the given interior knots.
// max_depth = 0 gives the plain 31-point Kronrod rule per piece (exact for piecewise polynomials of degree <= 61).
inline double integrate(const std::function<double(double)>& f, double a, double b, std::vector<double> knots = {},
                        double tol = 1e-12, unsigned max_depth = 15) {
  std::vector<double> pts{a};
  for (double k : knots) {
    if (k > a && k < b) pts.push_back(k);
  }
  pts.push_back(b);
  std::sort(pts.begin() + 1, pts.end() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, pts[i], pts[i + 1], max_depth, tol);
  }
  return total;
}

// Convolution of g with the indicator of [-1/2, 1/2]: int_{x-1/2}^{x+1/2} g.
inline double convolve_box(const std::function<double(double)>& g, double x, std::vector<double> knots) {
  return integrate(g, x - 0.5, x + 0.5, std::move(knots), 1e-12, 0);
}

inline double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
}

// Five-term definition, evaluated in long double.
inline double blackman_harris_direct(double x) {
  auto s = [](long double t) -> long double {
    if (t == 0.0L) return 1.0L;
    const long double pt = 3.14159265358979323846264338327950288L * t;
    return std::sin(pt) / pt;
  };
  const long double X = x;
  return static_cast<double>(0.5L * s(X) + (9.0L / 32.0L) * (s(X + 1) + s(X - 1)) - (1.0L / 32.0L) * (s(X + 3) + s(X - 3)));
}

struct BruteKernel {
  std::function<double(double)> phi;
  double lo;  // support [lo, hi]
  double hi;
};

// Full-window Kantorovich sum with adaptive quadrature per cell.
inline double kantorovich(const BruteKernel& kernel, const std::function<double(double)>& f,
                          const std::function<std::pair<double, double>(std::int64_t)>& cell, double w, double x) {
  const double u = w * x;
  const auto first = static_cast<std::int64_t>(std::floor(u - kernel.hi)) - 1;
  const auto last = static_cast<std::int64_t>(std::ceil(u - kernel.lo)) + 1;
  double sum = 0.0;
  for (std::int64_t k = first; k <= last; ++k) {
    const double phi = kernel.phi(u - static_cast<double>(k));
    if (phi == 0.0) continue;
    const auto [a, b] = cell(k);
    const double lo = (static_cast<double>(k) + a) / w;
    const double hi = (static_cast<double>(k) + b) / w;
    sum += phi * integrate(f, lo, hi) / (hi - lo);
  }
  return sum;
}

// Brute-force sup over u in [0,1) of sum_k |phi(u-k)| |k-u|^nu for a compact kernel.
inline double absolute_moment(const BruteKernel& kernel, double nu, int points = 20000) {
  double best = 0.0;
  for (int i = 0; i < points; ++i) {
    const double u = static_cast<double>(i) / points;
    double s = 0.0;
    for (auto k = static_cast<std::int64_t>(std::floor(u - kernel.hi)) - 1;
         k <= static_cast<std::int64_t>(std::ceil(u - kernel.lo)) + 1; ++k) {
      const double d = static_cast<double>(k) - u;
      s += std::abs(kernel.phi(u - static_cast<double>(k))) * (nu == 0.0 ? 1.0 : std::pow(std::abs(d), nu));
    }
    best = std::max(best, s);
  }
  return best;
}

// Brute-force modulus of continuity by exhaustive pairs on a grid of spacing h.
inline double modulus_grid_search(const std::function<double(double)>& f, double lo, double hi, double delta,
                                  double h) {
  const auto n = static_cast<std::size_t>(std::round((hi - lo) / h));
  std::vector<double> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) v[i] = f(lo + h * static_cast<double>(i));
  const auto span = static_cast<std::size_t>(std::floor(delta / h + 1e-9));
  double best = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i; j <= std::min(n, i + span); ++j) best = std::max(best, std::abs(v[j] - v[i]));
  }
  return best;
}

}  // namespace oracle

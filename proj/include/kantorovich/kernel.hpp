#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kantorovich/error.hpp"

namespace kantorovich {

struct CompactInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// |phi(x)| <= bound_constant / |x|^exponent for |x| >= onset_radius.
struct PolynomialDecay {
  double exponent = 0.0;
  double onset_radius = 0.0;
  double bound_constant = 0.0;
};

using Support = std::variant<CompactInterval, PolynomialDecay>;

struct BSplineSpec {
  int order = 1;
};

struct SplineComboSpec {
  int order = 2;
  double eps0 = 0.0;
  double eps1 = 0.0;
  double a0 = 0.0;
  double a1 = 0.0;
};

struct BlackmanHarrisSpec {};
struct ZeroSpec {};

using KernelSpec = std::variant<BSplineSpec, SplineComboSpec, BlackmanHarrisSpec, ZeroSpec>;

// Centered cardinal B-spline B_h, stored as h polynomial pieces of degree h-1
// on the unit cells of [-h/2, h/2]. Pieces come from the exact recursion
// N_h(j+t) = int_t^1 N_{h-1}(j-1+s) ds + int_0^t N_{h-1}(j+s) ds.
class BSpline {
 public:
  explicit BSpline(int order);

  int order() const noexcept { return order_; }
  double operator()(double x) const;

  // Coefficients (ascending powers of the local cell coordinate t in [0,1)).
  const std::vector<std::vector<double>>& pieces() const noexcept { return pieces_; }

 private:
  int order_;
  std::vector<std::vector<double>> pieces_;
};

double eval_bspline(const BSplineSpec& spec, double x);

double sinc(double x);

// H(x) = 1/2 sinc(x) + 9/32 (sinc(x+1) + sinc(x-1)) - 1/32 (sinc(x+3) + sinc(x-3)).
// Away from the poles of the reduced form the equivalent expression
// 9 sin(pi x) / (2 pi x (x^2-1)(x^2-9)) is used; it has no cancellation in the tail.
double eval_blackman_harris(double x);

// Solves a0 + a1 = 1, eps0 a0 + eps1 a1 = 0.
std::pair<double, double> solve_combo_coefficients(double eps0, double eps1);

// Inclusive range of integer indices.
struct IndexWindow {
  std::int64_t first = 0;
  std::int64_t last = -1;

  std::int64_t size() const noexcept { return last >= first ? last - first + 1 : 0; }
};

class Kernel {
 public:
  static Kernel bspline(int order);
  static Kernel spline_combo(int order, double eps0, double eps1);
  static Kernel blackman_harris();
  static Kernel zero();
  static Kernel from_spec(const KernelSpec& spec);

  double operator()(double x) const;

  const Support& support() const noexcept { return support_; }
  const KernelSpec& spec() const noexcept { return spec_; }
  const std::string& name() const noexcept { return name_; }
  bool is_compact() const noexcept { return std::holds_alternative<CompactInterval>(support_); }

  // Grid estimate of sup |phi|.
  double sup_norm() const noexcept { return sup_norm_; }

  // Upper bound of sup_u sum_{|u-k|>r} |phi(u-k)| |k-u|^nu.
  double tail_bound(double nu, double radius) const;

  // Smallest radius whose tail bound for order nu is <= tolerance.
  // Compact kernels return the support reach; the tail is then exactly zero.
  double truncation_radius(double nu, double tolerance) const;

  // Indices k with phi(u-k) possibly nonzero (compact) or |u-k| <= radius (decay).
  IndexWindow window(double u, double radius) const;

  // out[i] = phi(u - (win.first + i)) for every index in the window.
  void lattice_values(double u, IndexWindow win, std::vector<double>& out) const;

 private:
  Kernel(KernelSpec spec, Support support, std::string name);

  KernelSpec spec_;
  Support support_;
  std::string name_;
  std::optional<BSpline> spline_;
  double sup_norm_ = 0.0;
};

// Hard ceiling for decay-kernel truncation windows.
inline constexpr double kMaxTruncationRadius = 4.0e6;

struct SupGrid {
  int points = 1024;
  int refine_factor = 8;
};

struct GridSup {
  double value = 0.0;
  double argmax = 0.0;
};

// Sup over u in [0,1) of a 1-periodic function: equispaced grid plus one
// refinement pass at refine_factor times the density around the grid maximum.
template <class F>
GridSup periodic_sup(F&& f, SupGrid grid = {}) {
  if (grid.points < 2) throw InputError("periodic_sup: grid must have at least 2 points");
  const double step = 1.0 / grid.points;
  GridSup best{f(0.0), 0.0};
  for (int i = 1; i < grid.points; ++i) {
    const double u = i * step;
    const double v = f(u);
    if (v > best.value) best = {v, u};
  }
  if (grid.refine_factor > 1) {
    const double center = best.argmax;
    const double fine = step / grid.refine_factor;
    for (int j = -grid.refine_factor; j <= grid.refine_factor; ++j) {
      if (j == 0) continue;
      const double u = center + j * fine;
      const double v = f(u);
      if (v > best.value) best = {v, u};
    }
  }
  return best;
}

// sum over the truncation window of term(phi(u-k), k-u).
template <class Term>
double lattice_sum(const Kernel& kernel, double u, double radius, Term&& term) {
  const IndexWindow win = kernel.window(u, radius);
  thread_local std::vector<double> values;
  kernel.lattice_values(u, win, values);
  double sum = 0.0;
  for (std::int64_t k = win.first; k <= win.last; ++k) {
    const double d = static_cast<double>(k) - u;
    sum += term(values[static_cast<std::size_t>(k - win.first)], d);
  }
  return sum;
}

struct TailSample {
  double radius = 0.0;
  double tail = 0.0;
};

struct FractionalEstimate {
  double beta = 0.0;
  double value = 0.0;
};

struct AdmissibilityCertificate {
  std::string kernel_name;
  bool compact = true;
  double partition_of_unity_defect = 0.0;
  double first_moment_defect = 0.0;
  bool m2_finite = false;
  double m2_tail_bound = 0.0;
  double truncation_radius = 0.0;
  std::vector<TailSample> tail_vanishing;
  std::optional<FractionalEstimate> fractional_beta;
  SupGrid grid;
};

struct CertifyThresholds {
  double compact_defect = 1e-10;
  double decay_defect = 1e-6;
  double tail = 1e-9;
};

inline constexpr double kCertifiedTailTolerance = 1e-9;

AdmissibilityCertificate certify(const Kernel& kernel, int grid_size, std::span<const double> radii,
                                 std::optional<double> beta = std::nullopt);

bool passes(const AdmissibilityCertificate& cert, const CertifyThresholds& thresholds = {});

}  // namespace kantorovich

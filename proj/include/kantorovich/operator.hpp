#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kantorovich/intervals.hpp"
#include "kantorovich/kernel.hpp"
#include "kantorovich/quadrature.hpp"

namespace kantorovich {

struct Region {
  double lo = 0.0;
  double hi = 0.0;
};

struct Smoothness {
  enum class Class { C0, C1, Holder };
  Class cls = Class::C0;
  double beta = 1.0;      // Holder exponent
  double constant = 0.0;  // Holder constant
};

// A bounded function on R together with the facts the error bounds need.
struct TargetFunction {
  std::string name;
  std::function<double(double)> value;
  double sup_bound = 0.0;
  std::function<double(double)> derivative;
  Smoothness smoothness;
  // Bounded regions on which the global moduli of f and f' are attained.
  std::optional<Region> modulus_region;
  std::optional<Region> derivative_modulus_region;

  double operator()(double x) const { return value(x); }
  bool has_derivative() const noexcept { return static_cast<bool>(derivative); }
};

inline constexpr double kDefaultTruncationTolerance = 1e-12;
inline constexpr int kDefaultQuadratureOrder = 8;

class OperatorConfig {
 public:
  OperatorConfig(Kernel kernel, IntervalSequence intervals, double w,
                 double truncation_tolerance = kDefaultTruncationTolerance,
                 int quadrature_order = kDefaultQuadratureOrder);

  OperatorConfig with_w(double w) const;

  double w() const noexcept { return w_; }
  double truncation_tolerance() const noexcept { return truncation_tolerance_; }
  int quadrature_order() const noexcept { return rule_->order(); }
  const Kernel& kernel() const noexcept { return kernel_; }
  const IntervalSequence& intervals() const noexcept { return intervals_; }
  const GaussLegendre& rule() const noexcept { return *rule_; }

  // Window radius in sample-index units; for decay kernels the order-0 tail
  // beyond it is at most truncation_tolerance.
  double window_radius() const noexcept { return radius_; }

  // Indices k contributing to the series at x.
  IndexWindow window(double x) const { return kernel_.window(w_ * x, radius_); }

 private:
  Kernel kernel_;
  IntervalSequence intervals_;
  double w_;
  double truncation_tolerance_;
  const GaussLegendre* rule_;
  double radius_;
};

// Mean of f over [(k + a_k)/w, (k + b_k)/w].
double cell_average(const TargetFunction& f, std::int64_t k, const OperatorConfig& config);

// sum_k phi(wx - k) * cell_average(f, k).
double apply_kantorovich(const TargetFunction& f, double x, const OperatorConfig& config);

// sum_k phi(wx - k) * f(k / w).
double apply_generalized_sampling(const TargetFunction& f, double x, const OperatorConfig& config);

// Elementwise apply_kantorovich; threads > 1 splits the grid into contiguous chunks.
std::vector<double> apply_on_grid(const TargetFunction& f, std::span<const double> grid,
                                  const OperatorConfig& config, int threads = 1);

// Series over measured averages; every k in the window with phi(wx - k) != 0 must be present.
double apply_from_samples(const std::map<std::int64_t, double>& averages, double x, const OperatorConfig& config);

}  // namespace kantorovich

#pragma once

#include <vector>

namespace kantorovich {

// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree < 2 * order.
class GaussLegendre {
 public:
  explicit GaussLegendre(int order);

  int order() const noexcept { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  // Mean value of f over [lo, hi].
  template <class F>
  double mean(F&& f, double lo, double hi) const {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(mid + half * nodes_[i]);
    return 0.5 * acc;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

// Shared immutable rule for the given order (built once per process).
const GaussLegendre& gauss_legendre(int order);

}  // namespace kantorovich

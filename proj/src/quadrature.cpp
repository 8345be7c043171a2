#include "kantorovich/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "kantorovich/error.hpp"

namespace kantorovich {

GaussLegendre::GaussLegendre(int order) {
  if (order < 1 || order > 256) throw InputError("Gauss-Legendre order must lie in [1, 256]");
  const auto n = static_cast<std::size_t>(order);
  nodes_.resize(n);
  weights_.resize(n);
  // Newton iteration on P_n from the Chebyshev-like initial guess; nodes are symmetric.
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= order; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= order; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = order == 1 ? 1.0 : order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[i] = -x;
    nodes_[n - 1 - i] = x;
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
  if (order % 2 == 1) nodes_[n / 2] = 0.0;
}

const GaussLegendre& gauss_legendre(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const GaussLegendre>> rules;
  std::lock_guard lock(mutex);
  auto& slot = rules[order];
  if (!slot) slot = std::make_unique<const GaussLegendre>(order);
  return *slot;
}

}  // namespace kantorovich

#include "kantorovich/moments.hpp"

#include <cmath>
#include <limits>

#include "kantorovich/json_io.hpp"

namespace kantorovich {

namespace {

double int_power(double d, int nu) {
  double p = 1.0;
  for (int i = 0; i < nu; ++i) p *= d;
  return p;
}

// 0^beta = 0 for beta > 0, which std::pow already honors.
double abs_power(double d, double nu) { return nu == 0.0 ? 1.0 : std::pow(std::abs(d), nu); }

double sup_absolute(const Kernel& kernel, double nu, const MomentOptions& options) {
  const double radius = kernel.truncation_radius(nu, options.tail_tolerance);
  const double tail = kernel.tail_bound(nu, radius);
  const GridSup s = periodic_sup(
      [&](double u) {
        return lattice_sum(kernel, u, radius, [nu](double phi, double d) { return std::abs(phi) * abs_power(d, nu); });
      },
      options.grid);
  return s.value + tail;
}

}  // namespace

double algebraic_moment(const Kernel& kernel, int nu, double u, double tail_tolerance) {
  if (nu < 0) throw InputError("algebraic_moment: order must be nonnegative");
  if (!std::isfinite(u)) throw InputError("algebraic_moment: non-finite u");
  const double radius = kernel.truncation_radius(nu, tail_tolerance);
  return lattice_sum(kernel, u, radius, [nu](double phi, double d) { return phi * int_power(d, nu); });
}

double absolute_moment(const Kernel& kernel, int nu, const MomentOptions& options) {
  if (nu < 0) throw InputError("absolute_moment: order must be nonnegative");
  return sup_absolute(kernel, nu, options);
}

double fractional_moment(const Kernel& kernel, double beta, const MomentOptions& options) {
  if (!(beta > 0.0 && beta < 1.0)) throw InputError("fractional_moment: beta must lie in (0,1)");
  if (const auto* d = std::get_if<PolynomialDecay>(&kernel.support()); d && d->exponent - beta <= 1.0) {
    throw HypothesisError("fractional_moment: decay exponent minus beta must exceed 1");
  }
  return sup_absolute(kernel, beta, options);
}

MomentTable moment_table(const Kernel& kernel, std::optional<double> beta, const MomentOptions& options) {
  MomentTable t;
  t.kernel_name = kernel.name();
  t.grid = options.grid;
  t.sup_norm = kernel.sup_norm();
  t.truncation_radius = kernel.truncation_radius(2.0, options.tail_tolerance);
  t.tail_bound = kernel.tail_bound(2.0, t.truncation_radius);

  const double r0 = kernel.truncation_radius(0.0, options.tail_tolerance);
  const double r1 = kernel.truncation_radius(1.0, options.tail_tolerance);
  t.m0_defect = periodic_sup(
                    [&](double u) {
                      return std::abs(lattice_sum(kernel, u, r0, [](double phi, double) { return phi; }) - 1.0);
                    },
                    options.grid)
                    .value +
                kernel.tail_bound(0.0, r0);
  t.m1_defect = periodic_sup(
                    [&](double u) {
                      return std::abs(lattice_sum(kernel, u, r1, [](double phi, double d) { return phi * d; }));
                    },
                    options.grid)
                    .value +
                kernel.tail_bound(1.0, r1);
  t.M0 = absolute_moment(kernel, 0, options);
  t.M1 = absolute_moment(kernel, 1, options);
  t.M2 = absolute_moment(kernel, 2, options);
  if (beta) t.fractional = FractionalEstimate{*beta, fractional_moment(kernel, *beta, options)};
  return t;
}

MomentCache& MomentCache::global() {
  static MomentCache cache;
  return cache;
}

MomentTable MomentCache::get(const Kernel& kernel, std::optional<double> beta, const MomentOptions& options) {
  const Key key{to_json(kernel.spec()).dump(), beta.value_or(-1.0), options.grid.points,
                options.grid.refine_factor, options.tail_tolerance};
  {
    std::lock_guard lock(mutex_);
    if (auto it = tables_.find(key); it != tables_.end()) return *it->second;
  }
  // Computed outside the lock; the first published table wins.
  auto table = std::make_shared<const MomentTable>(moment_table(kernel, beta, options));
  std::lock_guard lock(mutex_);
  auto [it, inserted] = tables_.emplace(key, std::move(table));
  return *it->second;
}

}  // namespace kantorovich

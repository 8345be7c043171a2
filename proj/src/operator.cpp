#include "kantorovich/operator.hpp"

#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "kantorovich/error.hpp"

namespace kantorovich {

namespace {

void check_bounded(const TargetFunction& f) {
  if (!f.value) throw InputError("target function '" + f.name + "' has no evaluator");
  if (!std::isfinite(f.sup_bound) || f.sup_bound < 0.0) {
    throw InputError("target function '" + f.name + "' needs a finite sup bound");
  }
}

double checked_value(const TargetFunction& f, double u, std::int64_t k) {
  const double v = f.value(u);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os.precision(17);
    os << "non-finite value of '" << f.name << "' at u=" << u << " (cell k=" << k << ")";
    throw HypothesisError(os.str());
  }
  if (std::abs(v) > f.sup_bound * (1.0 + 1e-12)) {
    std::ostringstream os;
    os.precision(17);
    os << "'" << f.name << "' exceeds its sup bound " << f.sup_bound << " at u=" << u;
    throw HypothesisError(os.str());
  }
  return v;
}

}  // namespace

OperatorConfig::OperatorConfig(Kernel kernel, IntervalSequence intervals, double w, double truncation_tolerance,
                               int quadrature_order)
    : kernel_(std::move(kernel)),
      intervals_(std::move(intervals)),
      w_(w),
      truncation_tolerance_(truncation_tolerance),
      rule_(nullptr),
      radius_(0.0) {
  if (!(w > 0.0) || !std::isfinite(w)) throw InputError("operator config: w must be positive and finite");
  if (!(truncation_tolerance > 0.0)) throw InputError("operator config: truncation tolerance must be positive");
  if (quadrature_order < 2) throw InputError("operator config: quadrature order must be >= 2");
  rule_ = &gauss_legendre(quadrature_order);
  radius_ = kernel_.truncation_radius(0.0, truncation_tolerance);
}

OperatorConfig OperatorConfig::with_w(double w) const {
  OperatorConfig copy = *this;
  if (!(w > 0.0) || !std::isfinite(w)) throw InputError("operator config: w must be positive and finite");
  copy.w_ = w;
  return copy;
}

double cell_average(const TargetFunction& f, std::int64_t k, const OperatorConfig& config) {
  check_bounded(f);
  const CellOffsets c = config.intervals().at(k);
  if (!(c.b > c.a)) throw HypothesisError("empty averaging cell at k=" + std::to_string(k));
  const double kd = static_cast<double>(k);
  const double lo = (kd + c.a) / config.w();
  const double hi = (kd + c.b) / config.w();
  return config.rule().mean([&](double u) { return checked_value(f, u, k); }, lo, hi);
}

double apply_kantorovich(const TargetFunction& f, double x, const OperatorConfig& config) {
  check_bounded(f);
  if (!std::isfinite(x)) throw InputError("apply_kantorovich: non-finite x");
  const double u = config.w() * x;
  const IndexWindow win = config.window(x);
  thread_local std::vector<double> values;
  config.kernel().lattice_values(u, win, values);
  double sum = 0.0;
  for (std::int64_t k = win.first; k <= win.last; ++k) {
    const double phi = values[static_cast<std::size_t>(k - win.first)];
    if (phi == 0.0) continue;
    sum += phi * cell_average(f, k, config);
  }
  return sum;
}

double apply_generalized_sampling(const TargetFunction& f, double x, const OperatorConfig& config) {
  check_bounded(f);
  if (!std::isfinite(x)) throw InputError("apply_generalized_sampling: non-finite x");
  const double u = config.w() * x;
  const IndexWindow win = config.window(x);
  thread_local std::vector<double> values;
  config.kernel().lattice_values(u, win, values);
  double sum = 0.0;
  for (std::int64_t k = win.first; k <= win.last; ++k) {
    const double phi = values[static_cast<std::size_t>(k - win.first)];
    if (phi == 0.0) continue;
    sum += phi * checked_value(f, static_cast<double>(k) / config.w(), k);
  }
  return sum;
}

std::vector<double> apply_on_grid(const TargetFunction& f, std::span<const double> grid, const OperatorConfig& config,
                                  int threads) {
  std::vector<double> out(grid.size());
  auto run = [&](std::size_t first, std::size_t last) {
    for (std::size_t i = first; i < last; ++i) {
      try {
        out[i] = apply_kantorovich(f, grid[i], config);
      } catch (const InputError& e) {
        throw InputError("grid index " + std::to_string(i) + ": " + e.what());
      } catch (const HypothesisError& e) {
        throw HypothesisError("grid index " + std::to_string(i) + ": " + e.what());
      }
    }
  };
  const std::size_t n = grid.size();
  const auto workers = static_cast<std::size_t>(threads < 1 ? 1 : threads);
  if (workers == 1 || n < 2 * workers) {
    run(0, n);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t t = 0; t < workers; ++t) {
      const std::size_t first = t * chunk;
      const std::size_t last = std::min(n, first + chunk);
      if (first >= last) break;
      pool.emplace_back([&, t, first, last] {
        try {
          run(first, last);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

double apply_from_samples(const std::map<std::int64_t, double>& averages, double x, const OperatorConfig& config) {
  if (!std::isfinite(x)) throw InputError("apply_from_samples: non-finite x");
  const double u = config.w() * x;
  const IndexWindow win = config.window(x);
  thread_local std::vector<double> values;
  config.kernel().lattice_values(u, win, values);
  double sum = 0.0;
  for (std::int64_t k = win.first; k <= win.last; ++k) {
    const double phi = values[static_cast<std::size_t>(k - win.first)];
    if (phi == 0.0) continue;
    const auto it = averages.find(k);
    if (it == averages.end()) throw MissingSampleError(k);
    sum += phi * it->second;
  }
  return sum;
}

}  // namespace kantorovich

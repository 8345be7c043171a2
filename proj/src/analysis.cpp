#include "kantorovich/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "kantorovich/error.hpp"
#include "kantorovich/json_io.hpp"

namespace kantorovich {

namespace {

// Max over all windows of `span` consecutive grid points of (max - min).
double sliding_range(const std::vector<double>& v, std::size_t span) {
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  span = std::min(span, n - 1);
  std::deque<std::size_t> hi;
  std::deque<std::size_t> lo;
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    while (!hi.empty() && v[hi.back()] <= v[i]) hi.pop_back();
    hi.push_back(i);
    while (!lo.empty() && v[lo.back()] >= v[i]) lo.pop_back();
    lo.push_back(i);
    const std::size_t first = i >= span ? i - span : 0;
    while (hi.front() < first) hi.pop_front();
    while (lo.front() < first) lo.pop_front();
    best = std::max(best, v[hi.front()] - v[lo.front()]);
  }
  return best;
}

template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || n < 2 * workers) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < n; i += workers) fn(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double ModulusProfile::omega_at(double delta) const {
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (std::abs(deltas[i] - delta) <= 1e-12 * std::max(1.0, std::abs(delta))) return omegas[i];
  }
  throw InputError("modulus profile has no sample at delta=" + real(delta));
}

double ModulusProfile::majorant_at(double delta) const {
  if (majorant.empty()) throw InputError("modulus profile has no concave majorant");
  return evaluate_majorant(majorant, delta);
}

ModulusProfile estimate_modulus(const std::function<double(double)>& f, Region region,
                                std::span<const double> deltas, double grid_density) {
  if (!std::isfinite(region.lo) || !std::isfinite(region.hi) || !(region.hi > region.lo)) {
    throw InputError("estimate_modulus: region must be a finite nonempty interval");
  }
  if (!(grid_density > 0.0)) throw InputError("estimate_modulus: grid density must be positive");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0) || (i > 0 && !(deltas[i] > deltas[i - 1]))) {
      throw InputError("estimate_modulus: deltas must be positive and increasing");
    }
  }
  const double length = region.hi - region.lo;
  const auto intervals = static_cast<std::size_t>(std::ceil(length * grid_density));
  const double h = length / static_cast<double>(intervals);
  std::vector<double> xs(intervals + 1);
  std::vector<double> values(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    xs[i] = i == intervals ? region.hi : region.lo + h * static_cast<double>(i);
    values[i] = f(xs[i]);
    if (!std::isfinite(values[i])) throw HypothesisError("estimate_modulus: non-finite value at x=" + real(xs[i]));
  }

  ModulusProfile p;
  p.region = region;
  p.grid_spacing = h;
  p.deltas.push_back(0.0);
  p.omegas.push_back(0.0);
  double running = 0.0;
  for (double delta : deltas) {
    const auto span = static_cast<std::size_t>(std::floor(delta / h * (1.0 + 1e-12)));
    double best = span > 0 ? sliding_range(values, span) : 0.0;
    for (std::size_t i = 0; i <= intervals; ++i) {
      const double y = xs[i] + delta;
      if (y > region.hi) break;
      const double fy = f(y);
      if (!std::isfinite(fy)) throw HypothesisError("estimate_modulus: non-finite value at x=" + real(y));
      best = std::max(best, std::abs(fy - values[i]));
    }
    running = std::max(running, best);
    p.deltas.push_back(delta);
    p.omegas.push_back(running);
  }
  return p;
}

ModulusProfile estimate_modulus(const TargetFunction& f, Region region, std::span<const double> deltas,
                                double grid_density) {
  if (!f.value) throw InputError("estimate_modulus: function has no evaluator");
  return estimate_modulus(f.value, region, deltas, grid_density);
}

std::vector<MajorantPoint> upper_concave_hull(std::span<const double> deltas, std::span<const double> values) {
  if (deltas.size() != values.size()) throw InputError("upper_concave_hull: size mismatch");
  std::vector<MajorantPoint> pts;
  pts.reserve(deltas.size() + 1);
  pts.push_back({0.0, 0.0});
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] >= 0.0) || !std::isfinite(values[i])) throw InputError("upper_concave_hull: invalid sample");
    if (deltas[i] == 0.0) {
      pts.front().value = std::max(pts.front().value, values[i]);
      continue;
    }
    pts.push_back({deltas[i], values[i]});
  }
  std::stable_sort(pts.begin() + 1, pts.end(),
                   [](const MajorantPoint& a, const MajorantPoint& b) { return a.delta < b.delta; });
  // Equal abscissae keep their largest value.
  std::vector<MajorantPoint> uniq;
  for (const auto& p : pts) {
    if (!uniq.empty() && uniq.back().delta == p.delta) {
      uniq.back().value = std::max(uniq.back().value, p.value);
    } else {
      uniq.push_back(p);
    }
  }
  // Monotone chain, upper side: drop the middle point whenever it is on or below the chord.
  std::vector<MajorantPoint> hull;
  for (const auto& p : uniq) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross = (b.delta - a.delta) * (p.value - a.value) - (b.value - a.value) * (p.delta - a.delta);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  // The constant extension past the last breakpoint needs a nondecreasing hull.
  while (hull.size() >= 2 && hull.back().value < hull[hull.size() - 2].value) hull.pop_back();
  return hull;
}

double evaluate_majorant(std::span<const MajorantPoint> breakpoints, double delta) {
  if (breakpoints.empty()) throw InputError("evaluate_majorant: no breakpoints");
  if (!(delta >= 0.0)) throw InputError("evaluate_majorant: delta must be nonnegative");
  if (delta >= breakpoints.back().delta) return breakpoints.back().value;
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), delta,
                                   [](double d, const MajorantPoint& p) { return d < p.delta; });
  if (it == breakpoints.begin()) return breakpoints.front().value;
  const auto& a = *(it - 1);
  const auto& b = *it;
  const double t = (delta - a.delta) / (b.delta - a.delta);
  return a.value + t * (b.value - a.value);
}

ModulusProfile concave_majorant(ModulusProfile profile) {
  if (profile.deltas.size() < 2 || profile.deltas.front() != 0.0) {
    throw InputError("concave_majorant: profile needs at least two samples starting at delta=0");
  }
  profile.majorant = upper_concave_hull(profile.deltas, profile.omegas);
  return profile;
}

double voronovskaya_residual(const TargetFunction& f, double x, const OperatorConfig& config) {
  if (!f.has_derivative()) throw HypothesisError("voronovskaya_residual: '" + f.name + "' has no derivative");
  const auto& alpha = config.intervals().alpha();
  if (!alpha) throw HypothesisError("voronovskaya_residual: intervals have no constant a_k + b_k");
  const double kf = apply_kantorovich(f, x, config);
  return config.w() * (kf - f(x)) - 0.5 * *alpha * f.derivative(x);
}

double theorem2_constant(const MomentTable& moments, double m_star) {
  return m_star * m_star * moments.M0 + 2.0 * m_star * moments.M1 + moments.M2;
}

namespace {

double derivative_modulus_term(const TargetFunction& f, const OperatorConfig& config,
                               const ModulusProfile& derivative_profile) {
  if (!f.has_derivative()) throw HypothesisError("bound requires a C^1 function; '" + f.name + "' has no derivative");
  if (!config.intervals().alpha()) throw HypothesisError("bound requires constant a_k + b_k");
  if (derivative_profile.majorant.empty()) throw HypothesisError("bound requires the modulus profile of f'");
  return derivative_profile.majorant_at(config.intervals().delta_star() / (2.0 * config.w()));
}

}  // namespace

double theorem2_bound(const TargetFunction& f, const OperatorConfig& config, const MomentTable& moments,
                      const ModulusProfile& derivative_profile) {
  const double omega = derivative_modulus_term(f, config, derivative_profile);
  const double A = theorem2_constant(moments, config.intervals().m_star());
  return A / config.intervals().delta_star() * omega;
}

double theorem2_bound_compact(const TargetFunction& f, const OperatorConfig& config, const MomentTable& moments,
                              const ModulusProfile& derivative_profile, double R) {
  const auto* support = std::get_if<CompactInterval>(&config.kernel().support());
  if (!support) throw HypothesisError("compact-support bound requires a compactly supported kernel");
  if (!(R > 0.0) || support->lo < -R || support->hi > R) {
    throw HypothesisError("kernel support is not contained in [-R, R] for R=" + real(R));
  }
  const double omega = derivative_modulus_term(f, config, derivative_profile);
  const double m = config.intervals().m_star();
  return moments.M0 * (R * R + 2.0 * R * m + m * m) / config.intervals().delta_star() * omega;
}

double theorem3_bound(const TargetFunction& f, double beta, double w, const MomentTable& moments, double m_star,
                      double omega_at) {
  if (!(beta > 0.0 && beta < 1.0)) throw InputError("theorem3_bound: beta must lie in (0,1)");
  if (!(w > 2.0 * m_star)) {
    throw HypothesisError("order-of-approximation bound requires w > 2 M*; got w=" + real(w) +
                          ", 2 M*=" + real(2.0 * m_star));
  }
  if (!moments.fractional || std::abs(moments.fractional->beta - beta) > 1e-15) {
    throw HypothesisError("moment table lacks M_beta for beta=" + real(beta));
  }
  const double mb = moments.fractional->value;
  return omega_at * (mb + std::pow(m_star, beta) * moments.M0 + moments.M0) +
         std::pow(2.0, beta + 1.0) * f.sup_bound * std::pow(w, -beta) * mb;
}

std::optional<double> fitted_order(std::span<const double> ws, std::span<const double> errors) {
  if (ws.size() != errors.size()) throw InputError("fitted_order: size mismatch");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (errors[i] > kResidualFloor && ws[i] > 0.0) {
      lx.push_back(std::log(ws[i]));
      ly.push_back(std::log(errors[i]));
    }
  }
  if (lx.size() < 2) return std::nullopt;
  const double n = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return -sxy / sxx;
}

std::string to_string(RateMode mode) {
  return mode == RateMode::voronovskaya ? "voronovskaya" : "theorem3";
}

int ConvergenceReport::violations() const {
  int n = 0;
  for (const auto& r : rows) {
    if (!(r.ratio <= ratio_tolerance)) ++n;
    else if (r.compact_ratio && !(*r.compact_ratio <= ratio_tolerance)) ++n;
  }
  return n;
}

namespace {

double bound_ratio(double residual, double bound) {
  if (bound > 0.0) return residual / bound;
  return residual <= kResidualFloor ? 0.0 : std::numeric_limits<double>::infinity();
}

double default_density(std::span<const double> deltas, Region region) {
  const double smallest = *std::min_element(deltas.begin(), deltas.end());
  const double length = region.hi - region.lo;
  const double wanted = std::max(256.0, 16.0 / smallest);
  return std::min(wanted, 4.0e6 / length);
}

}  // namespace

ConvergenceReport rate_table(const TargetFunction& f, const Kernel& kernel, const IntervalSequence& intervals,
                             std::span<const double> w_list, std::span<const double> x_grid, RateMode mode,
                             const RateOptions& options) {
  if (w_list.empty()) throw InputError("rate_table: w_list must be nonempty");
  for (std::size_t i = 0; i < w_list.size(); ++i) {
    if (!(w_list[i] > 0.0) || (i > 0 && !(w_list[i] > w_list[i - 1]))) {
      throw InputError("rate_table: w_list must be positive and increasing");
    }
  }
  if (x_grid.empty()) throw InputError("rate_table: x grid must be nonempty");

  ConvergenceReport report;
  report.kernel_name = kernel.name();
  report.interval_spec = to_json(intervals).dump();
  report.function_name = f.name;
  report.mode = mode;
  report.alpha = intervals.alpha();
  report.delta_star = intervals.delta_star();
  report.m_star = intervals.m_star();

  const OperatorConfig base(kernel, intervals, w_list.front(), options.truncation_tolerance,
                            options.quadrature_order);
  const std::size_t nw = w_list.size();
  const std::size_t nx = x_grid.size();
  std::vector<double> errors(nw * nx, 0.0);

  if (mode == RateMode::voronovskaya) {
    if (!intervals.alpha()) throw HypothesisError("voronovskaya mode requires constant a_k + b_k");
    if (!f.has_derivative() || !f.derivative_modulus_region) {
      throw HypothesisError("voronovskaya mode requires '" + f.name + "' to carry f' and its modulus region");
    }
    const MomentTable moments = MomentCache::global().get(kernel, std::nullopt, options.moments);
    std::vector<double> deltas;
    for (auto it = w_list.rbegin(); it != w_list.rend(); ++it) deltas.push_back(intervals.delta_star() / (2.0 * *it));
    const Region region = *f.derivative_modulus_region;
    const double density = options.modulus_grid_density > 0.0 ? options.modulus_grid_density
                                                                : default_density(deltas, region);
    const ModulusProfile profile = concave_majorant(estimate_modulus(f.derivative, region, deltas, density));
    report.modulus_region = region;
    report.modulus_grid_spacing = profile.grid_spacing;

    parallel_for(nw * nx, options.threads, [&](std::size_t idx) {
      const OperatorConfig cfg = base.with_w(w_list[idx / nx]);
      errors[idx] = std::abs(voronovskaya_residual(f, x_grid[idx % nx], cfg));
    });

    std::optional<double> R;
    if (const auto* c = std::get_if<CompactInterval>(&kernel.support())) R = std::max(std::abs(c->lo), std::abs(c->hi));
    for (std::size_t i = 0; i < nw; ++i) {
      const OperatorConfig cfg = base.with_w(w_list[i]);
      RateRow row;
      row.w = w_list[i];
      for (std::size_t j = 0; j < nx; ++j) {
        if (errors[i * nx + j] > row.max_abs_residual || j == 0) {
          row.max_abs_residual = errors[i * nx + j];
          row.argmax_x = x_grid[j];
        }
      }
      row.theorem_bound = theorem2_bound(f, cfg, moments, profile);
      row.ratio = bound_ratio(row.max_abs_residual, row.theorem_bound);
      if (R && *R > 0.0) {
        row.compact_bound = theorem2_bound_compact(f, cfg, moments, profile, *R);
        row.compact_ratio = bound_ratio(row.max_abs_residual, *row.compact_bound);
      }
      report.rows.push_back(row);
    }
  } else {
    const double beta = options.beta ? *options.beta : f.smoothness.beta;
    if (!(beta > 0.0 && beta < 1.0)) throw InputError("theorem3 mode requires 0 < beta < 1");
    report.beta = beta;
    for (double w : w_list) {
      if (!(w > 2.0 * intervals.m_star())) {
        throw HypothesisError("order-of-approximation bound requires w > 2 M*; got w=" + real(w) +
                              ", 2 M*=" + real(2.0 * intervals.m_star()));
      }
    }
    if (!f.modulus_region) throw HypothesisError("theorem3 mode requires '" + f.name + "' to carry its modulus region");
    const MomentTable moments = MomentCache::global().get(kernel, beta, options.moments);
    std::vector<double> deltas;
    for (auto it = w_list.rbegin(); it != w_list.rend(); ++it) deltas.push_back(std::pow(*it, -beta));
    const Region region = *f.modulus_region;
    const double density = options.modulus_grid_density > 0.0 ? options.modulus_grid_density
                                                                : default_density(deltas, region);
    const ModulusProfile profile = estimate_modulus(f.value, region, deltas, density);
    report.modulus_region = region;
    report.modulus_grid_spacing = profile.grid_spacing;

    parallel_for(nw * nx, options.threads, [&](std::size_t idx) {
      const OperatorConfig cfg = base.with_w(w_list[idx / nx]);
      const double x = x_grid[idx % nx];
      errors[idx] = std::abs(apply_kantorovich(f, x, cfg) - f(x));
    });

    for (std::size_t i = 0; i < nw; ++i) {
      RateRow row;
      row.w = w_list[i];
      for (std::size_t j = 0; j < nx; ++j) {
        if (errors[i * nx + j] > row.max_abs_residual || j == 0) {
          row.max_abs_residual = errors[i * nx + j];
          row.argmax_x = x_grid[j];
        }
      }
      const double omega = profile.omega_at(std::pow(row.w, -beta));
      row.theorem_bound = theorem3_bound(f, beta, row.w, moments, intervals.m_star(), omega);
      row.ratio = bound_ratio(row.max_abs_residual, row.theorem_bound);
      report.rows.push_back(row);
    }
  }

  std::vector<double> ws;
  std::vector<double> errs;
  for (const auto& r : report.rows) {
    ws.push_back(r.w);
    errs.push_back(r.max_abs_residual);
  }
  report.fitted_order = fitted_order(ws, errs);
  return report;
}

}  // namespace kantorovich

#include "kantorovich/kernel.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <sstream>

namespace kantorovich {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw InputError(std::string(what) + ": non-finite argument");
}

double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

// Antiderivative vanishing at 0.
std::vector<double> integrate_poly(const std::vector<double>& c) {
  std::vector<double> out(c.size() + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) out[i + 1] = c[i] / static_cast<double>(i + 1);
  return out;
}

// sin(pi x) with exact reduction of the argument modulo 2.
double sin_pi(double x) {
  const double r = std::fmod(x, 2.0);
  return std::sin(kPi * r);
}

double blackman_harris_direct(double x) {
  return 0.5 * sinc(x) + (9.0 / 32.0) * (sinc(x + 1.0) + sinc(x - 1.0)) -
         (1.0 / 32.0) * (sinc(x + 3.0) + sinc(x - 3.0));
}

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double estimate_sup_norm(const Kernel& k) {
  double lo = 0.0;
  double hi = 0.0;
  if (const auto* c = std::get_if<CompactInterval>(&k.support())) {
    lo = c->lo;
    hi = c->hi;
  } else {
    const auto& d = std::get<PolynomialDecay>(k.support());
    lo = -4.0 * d.onset_radius;
    hi = 4.0 * d.onset_radius;
  }
  if (hi <= lo) return std::abs(k(lo));
  constexpr int n = 1 << 15;
  double best = 0.0;
  for (int i = 0; i <= n; ++i) best = std::max(best, std::abs(k(lo + (hi - lo) * i / n)));
  return best;
}

// Decay constant: max of |phi(x)||x|^p over onset <= |x| <= 4 onset, with a
// small relative margin for the sampling step.
double estimate_decay_constant(double (*phi)(double), double exponent, double onset) {
  constexpr double step = 1.0 / 1024.0;
  double best = 0.0;
  for (double x = onset; x <= 4.0 * onset; x += step) {
    best = std::max(best, std::abs(phi(x)) * std::pow(x, exponent));
    best = std::max(best, std::abs(phi(-x)) * std::pow(x, exponent));
  }
  return best * (1.0 + 1e-4);
}

}  // namespace

BSpline::BSpline(int order) : order_(order) {
  if (order < 1) throw InputError("B-spline order must be >= 1");
  pieces_ = {{1.0}};
  for (int h = 2; h <= order; ++h) {
    std::vector<std::vector<double>> next(static_cast<std::size_t>(h));
    for (int j = 0; j < h; ++j) {
      std::vector<double> poly(static_cast<std::size_t>(h), 0.0);
      if (j - 1 >= 0) {
        // int_t^1 P_{j-1} = I(1) - I(t)
        const auto anti = integrate_poly(pieces_[static_cast<std::size_t>(j - 1)]);
        const double total = horner(anti, 1.0);
        poly[0] += total;
        for (std::size_t i = 0; i < anti.size(); ++i) poly[i] -= anti[i];
      }
      if (j <= h - 2) {
        const auto anti = integrate_poly(pieces_[static_cast<std::size_t>(j)]);
        for (std::size_t i = 0; i < anti.size(); ++i) poly[i] += anti[i];
      }
      next[static_cast<std::size_t>(j)] = std::move(poly);
    }
    pieces_ = std::move(next);
  }
}

double BSpline::operator()(double x) const {
  const double y = x + 0.5 * order_;
  if (order_ == 1) {
    // Indicator of [-1/2, 1/2] with the midpoint value at the jumps.
    if (y > 0.0 && y < 1.0) return 1.0;
    if (y == 0.0 || y == 1.0) return 0.5;
    return 0.0;
  }
  if (!(y > 0.0) || !(y < order_)) return 0.0;
  const double cell = std::floor(y);
  const auto j = static_cast<std::size_t>(cell);
  return horner(pieces_[j], y - cell);
}

double eval_bspline(const BSplineSpec& spec, double x) {
  if (spec.order < 1) throw InputError("B-spline order must be >= 1");
  require_finite(x, "eval_bspline");
  return BSpline(spec.order)(x);
}

double sinc(double x) {
  const double px = kPi * x;
  if (std::abs(px) < 1e-4) return 1.0 - px * px / 6.0;
  return sin_pi(x) / px;
}

double eval_blackman_harris(double x) {
  require_finite(x, "eval_blackman_harris");
  const double ax = std::abs(x);
  if (ax < 4.0) return blackman_harris_direct(x);
  const double x2 = x * x;
  return 4.5 * sin_pi(x) / (kPi * x * (x2 - 1.0) * (x2 - 9.0));
}

std::pair<double, double> solve_combo_coefficients(double eps0, double eps1) {
  require_finite(eps0, "solve_combo_coefficients");
  require_finite(eps1, "solve_combo_coefficients");
  if (eps0 == eps1) throw InputError("solve_combo_coefficients: eps0 == eps1 makes the system singular");
  const double det = eps1 - eps0;
  return {eps1 / det, -eps0 / det};
}

Kernel::Kernel(KernelSpec spec, Support support, std::string name)
    : spec_(std::move(spec)), support_(support), name_(std::move(name)) {}

Kernel Kernel::bspline(int order) {
  if (order < 1) throw InputError("B-spline order must be >= 1");
  const double half = 0.5 * order;
  Kernel k(BSplineSpec{order}, CompactInterval{-half, half}, "bspline_h" + std::to_string(order));
  k.spline_.emplace(order);
  k.sup_norm_ = estimate_sup_norm(k);
  return k;
}

Kernel Kernel::spline_combo(int order, double eps0, double eps1) {
  if (order < 2) throw InputError("spline combination requires order >= 2");
  if (!(eps0 < eps1)) throw InputError("spline combination requires eps0 < eps1");
  const auto [a0, a1] = solve_combo_coefficients(eps0, eps1);
  const double half = 0.5 * order;
  Kernel k(SplineComboSpec{order, eps0, eps1, a0, a1}, CompactInterval{eps0 - half, eps1 + half},
           "spline_combo_h" + std::to_string(order) + "_eps(" + format_real(eps0) + "," +
               format_real(eps1) + ")");
  k.spline_.emplace(order);
  k.sup_norm_ = estimate_sup_norm(k);
  return k;
}

Kernel Kernel::blackman_harris() {
  constexpr double exponent = 5.0;
  constexpr double onset = 10.0;
  const double bound = estimate_decay_constant(&eval_blackman_harris, exponent, onset);
  Kernel k(BlackmanHarrisSpec{}, PolynomialDecay{exponent, onset, bound}, "blackman_harris");
  k.sup_norm_ = estimate_sup_norm(k);
  return k;
}

Kernel Kernel::zero() {
  Kernel k(ZeroSpec{}, CompactInterval{0.0, 0.0}, "zero");
  k.sup_norm_ = 0.0;
  return k;
}

Kernel Kernel::from_spec(const KernelSpec& spec) {
  return std::visit(
      [](const auto& s) -> Kernel {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BSplineSpec>) {
          return Kernel::bspline(s.order);
        } else if constexpr (std::is_same_v<T, SplineComboSpec>) {
          return Kernel::spline_combo(s.order, s.eps0, s.eps1);
        } else if constexpr (std::is_same_v<T, BlackmanHarrisSpec>) {
          return Kernel::blackman_harris();
        } else {
          return Kernel::zero();
        }
      },
      spec);
}

double Kernel::operator()(double x) const {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BSplineSpec>) {
          return (*spline_)(x);
        } else if constexpr (std::is_same_v<T, SplineComboSpec>) {
          return s.a0 * (*spline_)(x - s.eps0) + s.a1 * (*spline_)(x - s.eps1);
        } else if constexpr (std::is_same_v<T, BlackmanHarrisSpec>) {
          return eval_blackman_harris(x);
        } else {
          return 0.0;
        }
      },
      spec_);
}

double Kernel::tail_bound(double nu, double radius) const {
  if (const auto* c = std::get_if<CompactInterval>(&support_)) {
    const double reach = std::max(std::abs(c->lo), std::abs(c->hi));
    if (radius >= reach) return 0.0;
    return std::numeric_limits<double>::infinity();
  }
  const auto& d = std::get<PolynomialDecay>(support_);
  const double q = d.exponent - nu;
  if (q <= 1.0) return std::numeric_limits<double>::infinity();
  if (radius < d.onset_radius) return std::numeric_limits<double>::infinity();
  // Per side: sum over points t > r spaced by 1 of M t^-q <= M r^-q + int_r^inf M t^-q dt.
  return 2.0 * d.bound_constant * (std::pow(radius, -q) + std::pow(radius, 1.0 - q) / (q - 1.0));
}

double Kernel::truncation_radius(double nu, double tolerance) const {
  if (!(tolerance > 0.0)) throw InputError("truncation tolerance must be positive");
  if (const auto* c = std::get_if<CompactInterval>(&support_)) {
    return std::max(std::abs(c->lo), std::abs(c->hi));
  }
  const auto& d = std::get<PolynomialDecay>(support_);
  if (d.exponent - nu <= 1.0) {
    throw HypothesisError("kernel '" + name_ + "': series of order " + format_real(nu) +
                          " is not summable for decay exponent " + format_real(d.exponent));
  }
  double hi = std::ceil(d.onset_radius);
  while (tail_bound(nu, hi) > tolerance) {
    if (hi >= kMaxTruncationRadius) {
      throw HypothesisError("kernel '" + name_ + "': tail tolerance " + format_real(tolerance) +
                            " unreachable; achieved bound " +
                            format_real(tail_bound(nu, kMaxTruncationRadius)) + " at radius " +
                            format_real(kMaxTruncationRadius));
    }
    hi = std::min(2.0 * hi, kMaxTruncationRadius);
  }
  double lo = std::max(std::ceil(d.onset_radius), std::floor(hi / 2.0));
  if (tail_bound(nu, lo) <= tolerance) return lo;
  while (hi - lo > 1.0) {
    const double mid = std::floor(0.5 * (lo + hi));
    if (tail_bound(nu, mid) <= tolerance) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

IndexWindow Kernel::window(double u, double radius) const {
  if (const auto* c = std::get_if<CompactInterval>(&support_)) {
    // u - k in [lo, hi]
    return {static_cast<std::int64_t>(std::ceil(u - c->hi)), static_cast<std::int64_t>(std::floor(u - c->lo))};
  }
  return {static_cast<std::int64_t>(std::ceil(u - radius)), static_cast<std::int64_t>(std::floor(u + radius))};
}

void Kernel::lattice_values(double u, IndexWindow win, std::vector<double>& out) const {
  out.resize(static_cast<std::size_t>(win.size()));
  if (std::holds_alternative<BlackmanHarrisSpec>(spec_)) {
    if (!std::isfinite(u)) throw InputError("lattice_values: non-finite u");
    // sin(pi (u - k)) = (-1)^k sin(pi u) feeds the reduced form away from the poles.
    const double s = sin_pi(u);
    for (std::int64_t k = win.first; k <= win.last; ++k) {
      const double x = u - static_cast<double>(k);
      double v;
      if (std::abs(x) < 4.0) {
        v = blackman_harris_direct(x);
      } else {
        const double x2 = x * x;
        const double sk = (k % 2 == 0) ? s : -s;
        v = 4.5 * sk / (kPi * x * (x2 - 1.0) * (x2 - 9.0));
      }
      out[static_cast<std::size_t>(k - win.first)] = v;
    }
    return;
  }
  for (std::int64_t k = win.first; k <= win.last; ++k) {
    out[static_cast<std::size_t>(k - win.first)] = (*this)(u - static_cast<double>(k));
  }
}

namespace {

struct CertifySums {
  double partition = 0.0;
  double first = 0.0;
  double second_abs = 0.0;
  double fractional = 0.0;
  std::vector<double> tails;
};

CertifySums certify_sums(const Kernel& kernel, double u, double radius, std::span<const double> radii,
                         std::optional<double> beta) {
  CertifySums s;
  s.tails.assign(radii.size(), 0.0);
  const IndexWindow win = kernel.window(u, radius);
  thread_local std::vector<double> values;
  kernel.lattice_values(u, win, values);
  for (std::int64_t k = win.first; k <= win.last; ++k) {
    const double d = static_cast<double>(k) - u;
    const double phi = values[static_cast<std::size_t>(k - win.first)];
    s.partition += phi;
    s.first += phi * d;
    const double m2 = std::abs(phi) * d * d;
    s.second_abs += m2;
    if (beta) s.fractional += std::abs(phi) * std::pow(std::abs(d), *beta);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (std::abs(d) > radii[i]) s.tails[i] += m2;
    }
  }
  return s;
}

}  // namespace

AdmissibilityCertificate certify(const Kernel& kernel, int grid_size, std::span<const double> radii,
                                 std::optional<double> beta) {
  if (grid_size < 2) throw InputError("certify: grid_size must be >= 2");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw InputError("certify: radii must be positive and increasing");
    }
  }
  if (beta && !(*beta > 0.0 && *beta < 1.0)) throw InputError("certify: beta must lie in (0,1)");

  AdmissibilityCertificate cert;
  cert.kernel_name = kernel.name();
  cert.compact = kernel.is_compact();
  cert.grid = SupGrid{grid_size, 8};

  // One window serves every order; the order-2 tail is the binding one.
  const double radius = kernel.truncation_radius(2.0, kCertifiedTailTolerance);
  cert.truncation_radius = radius;
  const double tail0 = kernel.tail_bound(0.0, radius);
  const double tail1 = kernel.tail_bound(1.0, radius);
  const double tail2 = kernel.tail_bound(2.0, radius);
  const double tail_beta = beta ? kernel.tail_bound(*beta, radius) : 0.0;
  cert.m2_tail_bound = tail2;

  const std::size_t nq = 4 + radii.size();
  auto quantities = [&](double u) {
    const CertifySums s = certify_sums(kernel, u, radius, radii, beta);
    std::vector<double> q(nq);
    q[0] = std::abs(s.partition - 1.0);
    q[1] = std::abs(s.first);
    q[2] = s.second_abs;
    q[3] = s.fractional;
    for (std::size_t i = 0; i < radii.size(); ++i) q[4 + i] = s.tails[i];
    return q;
  };

  const double step = 1.0 / grid_size;
  std::vector<double> best(nq, -1.0);
  std::vector<double> argmax(nq, 0.0);
  for (int i = 0; i < grid_size; ++i) {
    const double u = i * step;
    const auto q = quantities(u);
    for (std::size_t j = 0; j < nq; ++j) {
      if (q[j] > best[j]) {
        best[j] = q[j];
        argmax[j] = u;
      }
    }
  }
  const int refine = cert.grid.refine_factor;
  for (std::size_t j = 0; j < nq; ++j) {
    const double center = argmax[j];
    for (int r = -refine; r <= refine; ++r) {
      if (r == 0) continue;
      const auto q = quantities(center + r * step / refine);
      best[j] = std::max(best[j], q[j]);
    }
  }

  cert.partition_of_unity_defect = best[0] + tail0;
  cert.first_moment_defect = best[1] + tail1;
  cert.m2_finite = std::isfinite(best[2] + tail2);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double tail = radii[i] >= radius ? kernel.tail_bound(2.0, radii[i]) : best[4 + i] + tail2;
    cert.tail_vanishing.push_back({radii[i], tail});
  }
  if (beta) cert.fractional_beta = FractionalEstimate{*beta, best[3] + tail_beta};
  return cert;
}

bool passes(const AdmissibilityCertificate& cert, const CertifyThresholds& thresholds) {
  const double limit = cert.compact ? thresholds.compact_defect : thresholds.decay_defect;
  return cert.partition_of_unity_defect <= limit && cert.first_moment_defect <= limit && cert.m2_finite &&
         cert.m2_tail_bound <= thresholds.tail;
}

}  // namespace kantorovich

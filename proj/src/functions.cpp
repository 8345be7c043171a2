#include "kantorovich/functions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <vector>

#include "kantorovich/error.hpp"

namespace kantorovich::functions {

namespace {

std::string label(const char* base, double p) {
  std::ostringstream os;
  os.precision(17);
  os << base << "(" << p << ")";
  return os.str();
}

double sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InputError(std::string(what) + " must be positive and finite");
}

}  // namespace

TargetFunction constant(double c) {
  if (!std::isfinite(c)) throw InputError("constant function needs a finite value");
  TargetFunction f;
  f.name = label("const", c);
  f.value = [c](double) { return c; };
  f.derivative = [](double) { return 0.0; };
  f.sup_bound = std::abs(c);
  f.smoothness = {Smoothness::Class::C1, 1.0, 0.0};
  f.modulus_region = Region{0.0, 1.0};
  f.derivative_modulus_region = Region{0.0, 1.0};
  return f;
}

TargetFunction identity_clamped(double limit) {
  require_positive(limit, "clamp limit");
  TargetFunction f;
  f.name = label("identity_clamped", limit);
  f.value = [limit](double x) { return std::clamp(x, -limit, limit); };
  f.derivative = [limit](double x) { return std::abs(x) < limit ? 1.0 : 0.0; };
  f.sup_bound = limit;
  f.smoothness = {Smoothness::Class::Holder, 1.0, 1.0};
  f.modulus_region = Region{-limit - 1.0, limit + 1.0};
  // f' is identically 1 away from the clamp; the kinks sit outside any sensible grid.
  f.derivative_modulus_region = Region{-0.5 * limit, 0.5 * limit};
  return f;
}

TargetFunction square(double limit) {
  require_positive(limit, "square limit");
  const double L = limit;
  TargetFunction f;
  f.name = label("square", L);
  f.value = [L](double x) {
    const double ax = std::abs(x);
    if (ax <= L) return x * x;
    if (ax <= 2.0 * L) {
      const double t = ax - L;
      return L * L + 2.0 * L * t - t * t;
    }
    return 2.0 * L * L;
  };
  f.derivative = [L](double x) {
    const double ax = std::abs(x);
    if (ax <= L) return 2.0 * x;
    if (ax <= 2.0 * L) return sign(x) * (2.0 * L - 2.0 * (ax - L));
    return 0.0;
  };
  f.sup_bound = 2.0 * L * L;
  f.smoothness = {Smoothness::Class::C1, 1.0, 0.0};
  f.modulus_region = Region{-2.0 * L - 1.0, 2.0 * L + 1.0};
  f.derivative_modulus_region = f.modulus_region;
  return f;
}

TargetFunction sine() {
  TargetFunction f;
  f.name = "sin";
  f.value = [](double x) { return std::sin(x); };
  f.derivative = [](double x) { return std::cos(x); };
  f.sup_bound = 1.0;
  f.smoothness = {Smoothness::Class::C1, 1.0, 0.0};
  f.modulus_region = Region{-4.0, 4.0};
  f.derivative_modulus_region = Region{-4.0, 4.0};
  return f;
}

TargetFunction x_sin3x(double limit) {
  require_positive(limit, "x_sin3x limit");
  const double L = limit;
  auto envelope = [L](double x) {
    const double ax = std::abs(x);
    if (ax <= L) return x;
    if (ax <= 2.0 * L) {
      const double t = ax - L;
      return sign(x) * (L + t - t * t / (2.0 * L));
    }
    return sign(x) * 1.5 * L;
  };
  auto envelope_slope = [L](double x) {
    const double ax = std::abs(x);
    if (ax <= L) return 1.0;
    if (ax <= 2.0 * L) return 1.0 - (ax - L) / L;
    return 0.0;
  };
  TargetFunction f;
  f.name = label("x_sin3x", L);
  f.value = [envelope](double x) { return envelope(x) * std::sin(3.0 * x); };
  f.derivative = [envelope, envelope_slope](double x) {
    return envelope_slope(x) * std::sin(3.0 * x) + 3.0 * envelope(x) * std::cos(3.0 * x);
  };
  f.sup_bound = 1.5 * L;
  f.smoothness = {Smoothness::Class::C1, 1.0, 0.0};
  f.modulus_region = Region{-2.0 * L - 3.0, 2.0 * L + 3.0};
  f.derivative_modulus_region = f.modulus_region;
  return f;
}

TargetFunction holder_sine(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw InputError("holder_sine: beta must lie in (0,1]");
  TargetFunction f;
  f.name = label("holder_sine", beta);
  f.value = [beta](double x) { return std::pow(std::abs(std::sin(x)), beta); };
  f.sup_bound = 1.0;
  f.smoothness = {Smoothness::Class::Holder, beta, 1.0};
  f.modulus_region = Region{-std::numbers::pi, std::numbers::pi};
  return f;
}

TargetFunction sampled_signal(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.empty()) throw InputError("sampled signal needs matching nonempty x and y");
  auto px = std::make_shared<std::vector<double>>(xs.begin(), xs.end());
  auto py = std::make_shared<std::vector<double>>(ys.begin(), ys.end());
  for (std::size_t i = 0; i < px->size(); ++i) {
    if (!std::isfinite((*px)[i]) || !std::isfinite((*py)[i])) throw InputError("sampled signal has non-finite data");
    if (i > 0 && !((*px)[i] > (*px)[i - 1])) throw InputError("sampled signal abscissae must increase");
  }
  TargetFunction f;
  f.name = "sampled_signal";
  f.value = [px, py](double x) {
    const auto& X = *px;
    const auto& Y = *py;
    if (x <= X.front()) return Y.front();
    if (x >= X.back()) return Y.back();
    const auto it = std::upper_bound(X.begin(), X.end(), x);
    const auto i = static_cast<std::size_t>(it - X.begin());
    const double t = (x - X[i - 1]) / (X[i] - X[i - 1]);
    return Y[i - 1] + t * (Y[i] - Y[i - 1]);
  };
  double sup = 0.0;
  for (double y : *py) sup = std::max(sup, std::abs(y));
  f.sup_bound = sup;
  f.smoothness = {Smoothness::Class::C0, 1.0, 0.0};
  f.modulus_region = Region{px->front() - 1.0, px->back() + 1.0};
  return f;
}

}  // namespace kantorovich::functions

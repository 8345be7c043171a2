#pragma once

#include <random>
#include <string>
#include <vector>

#include "kantorovich/functions.hpp"
#include "kantorovich/operator.hpp"
#include "oracles.hpp"

namespace fixtures {

// Independent evaluation of a compact kernel spec through the truncated-power formula.
inline oracle::BruteKernel brute_kernel(const kantorovich::Kernel& k) {
  using namespace kantorovich;
  const auto& c = std::get<CompactInterval>(k.support());
  if (const auto* b = std::get_if<BSplineSpec>(&k.spec())) {
    const int h = b->order;
    return {[h](double x) { return oracle::bspline_truncated_power(h, x); }, c.lo, c.hi};
  }
  const auto& s = std::get<SplineComboSpec>(k.spec());
  const double a0 = s.eps1 / (s.eps1 - s.eps0);
  const double a1 = 1.0 - a0;
  return {[s, a0, a1](double x) {
            return a0 * oracle::bspline_truncated_power(s.order, x - s.eps0) +
                   a1 * oracle::bspline_truncated_power(s.order, x - s.eps1);
          },
          c.lo, c.hi};
}

struct RandomConfig {
  kantorovich::Kernel kernel;
  kantorovich::IntervalSequence intervals;
  kantorovich::TargetFunction f;
  double w;
  double x;
};

inline RandomConfig random_compact_config(std::mt19937_64& rng) {
  using namespace kantorovich;
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 5);
  Kernel kernel = Kernel::bspline(2);
  switch (pick(rng)) {
    case 0: kernel = Kernel::bspline(2); break;
    case 1: kernel = Kernel::bspline(3); break;
    case 2: kernel = Kernel::bspline(4); break;
    case 3: kernel = Kernel::spline_combo(3, -1.0, 1.0); break;
    case 4: kernel = Kernel::spline_combo(2, -0.5 - U(rng), 0.2 + U(rng)); break;
    default: kernel = Kernel::spline_combo(4, -2.0, 1.0); break;
  }
  IntervalSequence intervals = IntervalSequence::constant(0.0, 1.0);
  switch (pick(rng) % 3) {
    case 0: {
      const double a = -U(rng);
      intervals = IntervalSequence::constant(a, a + 0.2 + U(rng));
      break;
    }
    case 1: intervals = IntervalSequence::seeded_alpha(2.0 * U(rng) - 1.0, 0.3, 1.5, rng()); break;
    default: intervals = IntervalSequence::seeded_random(0.25, 1.0, rng()); break;
  }
  TargetFunction f = functions::sine();
  switch (pick(rng) % 3) {
    case 0: f = functions::sine(); break;
    case 1: f = functions::square(4.0); break;
    default: f = functions::x_sin3x(4.0); break;
  }
  const double w = 1.0 + 199.0 * U(rng);
  const double x = -3.0 + 6.0 * U(rng);
  return {kernel, intervals, f, w, x};
}

inline double brute_kantorovich(const RandomConfig& c) {
  const auto bk = brute_kernel(c.kernel);
  const auto& seq = c.intervals;
  return oracle::kantorovich(
      bk, c.f.value,
      [&seq](std::int64_t k) {
        const auto cell = seq.at(k);
        return std::pair{cell.a, cell.b};
      },
      c.w, c.x);
}

}  // namespace fixtures

#include "kantorovich/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kantorovich/error.hpp"

namespace kantorovich {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InputError(std::string("intervals: non-finite ") + what);
}

// a_k + b_k must equal alpha exactly. When alpha sits on the 2^-30 grid, a_k is
// snapped onto that grid so that b_k = alpha - a_k and the sum are exact.
CellOffsets alpha_cell(double alpha, double delta_star, double delta_max, double u) {
  const double width = delta_star + u * (delta_max - delta_star);
  double a = (alpha - width) / 2.0;
  constexpr double grid = 0x1p-30;
  constexpr double limit = 0x1p20;
  if (std::floor(alpha / grid) * grid == alpha && std::abs(alpha) < limit && delta_max < limit) {
    double q = std::floor(a / grid) * grid;
    if (alpha - 2.0 * q > delta_max) q += grid;
    if (alpha - 2.0 * q >= delta_star && alpha - 2.0 * q <= delta_max) a = q;
  }
  return {a, alpha - a};
}

}  // namespace

std::string to_string(IntervalKind kind) {
  switch (kind) {
    case IntervalKind::constant:
      return "constant";
    case IntervalKind::symmetric_alpha:
      return "symmetric_alpha";
    case IntervalKind::seeded_random:
      return "seeded_random";
    case IntervalKind::custom:
      return "custom";
  }
  return "unknown";
}

double counter_uniform(std::uint64_t seed, std::int64_t k, std::uint64_t stream) {
  const std::uint64_t h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(k) ^ splitmix64(stream)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

IntervalSequence IntervalSequence::constant(double a, double b) {
  require_finite(a, "a");
  require_finite(b, "b");
  if (!(b > a)) throw InputError("constant intervals require b > a");
  IntervalSequence s;
  s.generator_ = [a, b](std::int64_t) { return CellOffsets{a, b}; };
  s.kind_ = IntervalKind::constant;
  s.alpha_ = a + b;
  s.delta_star_ = b - a;
  s.m_star_ = std::max(std::abs(a), std::abs(b));
  s.param_a_ = a;
  s.param_b_ = b;
  return s;
}

IntervalSequence IntervalSequence::seeded_alpha(double alpha, double delta_star, double m_star, std::uint64_t seed) {
  require_finite(alpha, "alpha");
  require_finite(delta_star, "delta_star");
  require_finite(m_star, "m_star");
  if (!(delta_star > 0.0)) throw InputError("seeded intervals require delta_star > 0");
  const double delta_max = 2.0 * m_star - std::abs(alpha);
  if (!(delta_star <= delta_max)) {
    std::ostringstream os;
    os << "infeasible intervals: delta_star=" << delta_star << " exceeds 2*m_star-|alpha|=" << delta_max;
    throw InputError(os.str());
  }
  IntervalSequence s;
  s.generator_ = [alpha, delta_star, delta_max, seed](std::int64_t k) {
    return alpha_cell(alpha, delta_star, delta_max, counter_uniform(seed, k));
  };
  s.kind_ = IntervalKind::symmetric_alpha;
  s.alpha_ = alpha;
  s.delta_star_ = delta_star;
  s.m_star_ = m_star;
  s.param_a_ = alpha;
  s.seed_ = seed;
  return s;
}

IntervalSequence IntervalSequence::seeded_random(double delta_star, double m_star, std::uint64_t seed) {
  require_finite(delta_star, "delta_star");
  require_finite(m_star, "m_star");
  if (!(delta_star > 0.0)) throw InputError("seeded intervals require delta_star > 0");
  if (!(delta_star <= 2.0 * m_star)) throw InputError("infeasible intervals: delta_star exceeds 2*m_star");
  IntervalSequence s;
  s.generator_ = [delta_star, m_star, seed](std::int64_t k) {
    const double width = delta_star + counter_uniform(seed, k, 1) * (2.0 * m_star - delta_star);
    const double a = -m_star + counter_uniform(seed, k, 2) * (2.0 * m_star - width);
    return CellOffsets{a, a + width};
  };
  s.kind_ = IntervalKind::seeded_random;
  s.delta_star_ = delta_star;
  s.m_star_ = m_star;
  s.seed_ = seed;
  return s;
}

IntervalSequence IntervalSequence::custom(Generator generator, double delta_star, double m_star,
                                          std::optional<double> alpha) {
  if (!generator) throw InputError("custom intervals require a generator");
  if (!(delta_star > 0.0)) throw InputError("custom intervals require delta_star > 0");
  IntervalSequence s;
  s.generator_ = std::move(generator);
  s.kind_ = IntervalKind::custom;
  s.alpha_ = alpha;
  s.delta_star_ = delta_star;
  s.m_star_ = m_star;
  return s;
}

IntervalReport validate(const IntervalSequence& seq, std::int64_t k_first, std::int64_t k_last) {
  for (std::int64_t k = k_first; k <= k_last; ++k) {
    const CellOffsets c = seq.at(k);
    std::ostringstream os;
    if (!std::isfinite(c.a) || !std::isfinite(c.b)) {
      os << "non-finite endpoint";
    } else if (!(c.width() >= seq.delta_star()) || !(c.width() > 0.0)) {
      os << "b_k - a_k = " << c.width() << " below delta_star = " << seq.delta_star();
    } else if (std::abs(c.a) > seq.m_star() || std::abs(c.b) > seq.m_star()) {
      os << "endpoint magnitude exceeds m_star = " << seq.m_star();
    } else if (seq.alpha() && std::abs(c.a + c.b - *seq.alpha()) > 1e-12 * (1.0 + std::abs(*seq.alpha()))) {
      os << "a_k + b_k = " << (c.a + c.b) << " differs from alpha = " << *seq.alpha();
    } else {
      continue;
    }
    return {false, k, "violation at k=" + std::to_string(k) + ": " + os.str()};
  }
  return {true, std::nullopt, "ok"};
}

}  // namespace kantorovich

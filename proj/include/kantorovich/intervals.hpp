#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace kantorovich {

// Averaging window offsets: the k-th cell is [(k + a)/w, (k + b)/w].
struct CellOffsets {
  double a = 0.0;
  double b = 0.0;

  double width() const noexcept { return b - a; }
};

enum class IntervalKind { constant, symmetric_alpha, seeded_random, custom };

std::string to_string(IntervalKind kind);

class IntervalSequence {
 public:
  using Generator = std::function<CellOffsets(std::int64_t)>;

  // a_k = a, b_k = b.
  static IntervalSequence constant(double a, double b);

  // a_k + b_k = alpha with pseudo-random widths in [delta_star, 2 m_star - |alpha|].
  static IntervalSequence seeded_alpha(double alpha, double delta_star, double m_star, std::uint64_t seed);

  // Bounded sequences without a common endpoint sum; widths >= delta_star, endpoints within m_star.
  static IntervalSequence seeded_random(double delta_star, double m_star, std::uint64_t seed);

  // Caller-declared constants; validate() checks them.
  static IntervalSequence custom(Generator generator, double delta_star, double m_star,
                                 std::optional<double> alpha = std::nullopt);

  CellOffsets at(std::int64_t k) const { return generator_(k); }

  IntervalKind kind() const noexcept { return kind_; }
  const std::optional<double>& alpha() const noexcept { return alpha_; }
  double delta_star() const noexcept { return delta_star_; }
  double m_star() const noexcept { return m_star_; }

  // Generation parameters (meaningful for the non-custom kinds).
  double param_a() const noexcept { return param_a_; }
  double param_b() const noexcept { return param_b_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  IntervalSequence() = default;

  Generator generator_;
  IntervalKind kind_ = IntervalKind::constant;
  std::optional<double> alpha_;
  double delta_star_ = 0.0;
  double m_star_ = 0.0;
  double param_a_ = 0.0;
  double param_b_ = 0.0;
  std::uint64_t seed_ = 0;
};

struct IntervalReport {
  bool ok = true;
  std::optional<std::int64_t> first_violation;
  std::string message;
};

IntervalReport validate(const IntervalSequence& seq, std::int64_t k_first, std::int64_t k_last);

// Counter-based uniform variate in [0,1) from (seed, k, stream).
double counter_uniform(std::uint64_t seed, std::int64_t k, std::uint64_t stream = 0);

}  // namespace kantorovich

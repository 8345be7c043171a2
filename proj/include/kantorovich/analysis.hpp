#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kantorovich/moments.hpp"
#include "kantorovich/operator.hpp"

namespace kantorovich {

// Slack for grid-sup underestimation of moduli and moment sups in bound checks.
inline constexpr double kRatioTolerance = 1.05;

// Below this magnitude a residual is treated as floating-point zero, both when
// comparing against a vanishing bound and when fitting orders.
inline constexpr double kResidualFloor = 1e-13;

struct MajorantPoint {
  double delta = 0.0;
  double value = 0.0;
};

struct ModulusProfile {
  std::vector<double> deltas;  // increasing, deltas[0] == 0
  std::vector<double> omegas;  // nondecreasing, omegas[0] == 0
  std::vector<MajorantPoint> majorant;
  Region region;
  double grid_spacing = 0.0;

  // Sampled modulus at a delta that was part of the profile.
  double omega_at(double delta) const;

  // Least concave majorant: linear between breakpoints, constant past the last one.
  double majorant_at(double delta) const;
};

// omega(f, delta) = sup_{|x-y| <= delta} |f(x) - f(y)| over a uniform grid on
// region (grid_density points per unit length) plus exact-offset pairs (x, x + delta).
ModulusProfile estimate_modulus(const std::function<double(double)>& f, Region region,
                                std::span<const double> deltas, double grid_density);

ModulusProfile estimate_modulus(const TargetFunction& f, Region region, std::span<const double> deltas,
                                double grid_density);

// Upper concave hull of the points (deltas[i], values[i]) together with (0, 0).
std::vector<MajorantPoint> upper_concave_hull(std::span<const double> deltas, std::span<const double> values);

double evaluate_majorant(std::span<const MajorantPoint> breakpoints, double delta);

// Fills profile.majorant.
ModulusProfile concave_majorant(ModulusProfile profile);

// w (K_w f(x) - f(x)) - (alpha / 2) f'(x).
double voronovskaya_residual(const TargetFunction& f, double x, const OperatorConfig& config);

// A = (M*)^2 M0 + 2 M* M1 + M2.
double theorem2_constant(const MomentTable& moments, double m_star);

// (A / delta*) * majorant(f', delta* / (2w)).
double theorem2_bound(const TargetFunction& f, const OperatorConfig& config, const MomentTable& moments,
                      const ModulusProfile& derivative_profile);

// M0 (R^2 + 2 R M* + (M*)^2) / delta* * majorant(f', delta* / (2w)), for phi supported in [-R, R].
double theorem2_bound_compact(const TargetFunction& f, const OperatorConfig& config, const MomentTable& moments,
                              const ModulusProfile& derivative_profile, double R);

// omega (M_beta + (M*)^beta M0 + M0) + 2^(beta+1) ||f|| w^-beta M_beta, valid for w > 2 M*.
double theorem3_bound(const TargetFunction& f, double beta, double w, const MomentTable& moments, double m_star,
                      double omega_at);

// Least-squares slope of -log(error) against log(w), ignoring errors below kResidualFloor.
std::optional<double> fitted_order(std::span<const double> ws, std::span<const double> errors);

enum class RateMode { voronovskaya, theorem3 };

std::string to_string(RateMode mode);

struct RateRow {
  double w = 0.0;
  double max_abs_residual = 0.0;
  double argmax_x = 0.0;
  double theorem_bound = 0.0;
  double ratio = 0.0;
  std::optional<double> compact_bound;
  std::optional<double> compact_ratio;
};

struct ConvergenceReport {
  std::string kernel_name;
  std::string interval_spec;
  std::string function_name;
  RateMode mode = RateMode::voronovskaya;
  std::vector<RateRow> rows;
  std::optional<double> fitted_order;
  std::optional<double> alpha;
  std::optional<double> beta;
  double delta_star = 0.0;
  double m_star = 0.0;
  Region modulus_region;
  double modulus_grid_spacing = 0.0;
  double ratio_tolerance = kRatioTolerance;

  // Number of rows whose ratio (or compact ratio) exceeds ratio_tolerance.
  int violations() const;
};

struct RateOptions {
  double truncation_tolerance = kDefaultTruncationTolerance;
  int quadrature_order = kDefaultQuadratureOrder;
  std::optional<double> beta;  // theorem3 mode; defaults to the function's Holder exponent
  double modulus_grid_density = 0.0;  // 0 picks a density from the smallest delta
  MomentOptions moments;
  int threads = 1;
};

ConvergenceReport rate_table(const TargetFunction& f, const Kernel& kernel, const IntervalSequence& intervals,
                             std::span<const double> w_list, std::span<const double> x_grid, RateMode mode,
                             const RateOptions& options = {});

}  // namespace kantorovich

#include "kantorovich/json_io.hpp"

#include <cmath>
#include <limits>

#include "kantorovich/analysis.hpp"
#include "kantorovich/error.hpp"
#include "kantorovich/functions.hpp"

namespace kantorovich {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw InputError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

int integer(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::uint64_t seed_of(const json& j) {
  const json& v = field(j, "seed");
  if (!v.is_number_integer()) throw InputError("field 'seed' must be an integer");
  return v.is_number_unsigned() ? v.get<std::uint64_t>() : static_cast<std::uint64_t>(v.get<std::int64_t>());
}

std::string text(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw InputError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

// JSON has no infinity; unbounded values become null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const SupGrid& g) { return {{"points", g.points}, {"refine_factor", g.refine_factor}}; }

}  // namespace

KernelSpec kernel_spec_from_json(const json& j) {
  const std::string type = text(j, "type");
  if (type == "bspline") return BSplineSpec{integer(j, "h")};
  if (type == "spline_combo") {
    SplineComboSpec s;
    s.order = integer(j, "h");
    s.eps0 = number(j, "eps0");
    s.eps1 = number(j, "eps1");
    return s;
  }
  if (type == "blackman_harris") return BlackmanHarrisSpec{};
  if (type == "zero") return ZeroSpec{};
  throw InputError("unknown kernel type '" + type + "'");
}

json to_json(const KernelSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BSplineSpec>) {
          return {{"type", "bspline"}, {"h", s.order}};
        } else if constexpr (std::is_same_v<T, SplineComboSpec>) {
          return {{"type", "spline_combo"}, {"h", s.order}, {"eps0", s.eps0}, {"eps1", s.eps1}};
        } else if constexpr (std::is_same_v<T, BlackmanHarrisSpec>) {
          return {{"type", "blackman_harris"}};
        } else {
          return {{"type", "zero"}};
        }
      },
      spec);
}

IntervalSequence intervals_from_json(const json& j) {
  const std::string kind = text(j, "kind");
  if (kind == "constant") return IntervalSequence::constant(number(j, "a"), number(j, "b"));
  if (kind == "symmetric_alpha") {
    return IntervalSequence::seeded_alpha(number(j, "alpha"), number(j, "delta_star"), number(j, "m_star"),
                                          seed_of(j));
  }
  if (kind == "seeded_random") {
    return IntervalSequence::seeded_random(number(j, "delta_star"), number(j, "m_star"), seed_of(j));
  }
  throw InputError("unknown interval kind '" + kind + "'");
}

json to_json(const IntervalSequence& seq) {
  switch (seq.kind()) {
    case IntervalKind::constant:
      return {{"kind", "constant"}, {"a", seq.param_a()}, {"b", seq.param_b()}};
    case IntervalKind::symmetric_alpha:
      return {{"kind", "symmetric_alpha"},
              {"alpha", *seq.alpha()},
              {"delta_star", seq.delta_star()},
              {"m_star", seq.m_star()},
              {"seed", seq.seed()}};
    case IntervalKind::seeded_random:
      return {{"kind", "seeded_random"}, {"delta_star", seq.delta_star()}, {"m_star", seq.m_star()}, {"seed", seq.seed()}};
    case IntervalKind::custom:
      break;
  }
  json out = {{"kind", "custom"}, {"delta_star", seq.delta_star()}, {"m_star", seq.m_star()}};
  if (seq.alpha()) out["alpha"] = *seq.alpha();
  return out;
}

TargetFunction function_from_json(const json& j) {
  const json spec = j.is_string() ? json{{"name", j.get<std::string>()}} : j;
  const std::string name = text(spec, "name");
  if (name == "const") return functions::constant(number_or(spec, "value", 1.0));
  if (name == "identity_clamped") return functions::identity_clamped(number_or(spec, "limit", 1.0e4));
  if (name == "square") return functions::square(number_or(spec, "limit", 4.0));
  if (name == "sin") return functions::sine();
  if (name == "x_sin3x") return functions::x_sin3x(number_or(spec, "limit", 4.0));
  if (name == "holder_sine") return functions::holder_sine(number(spec, "beta"));
  throw InputError("unknown builtin function '" + name + "'");
}

json to_json(const AdmissibilityCertificate& cert) {
  json tails = json::array();
  for (const auto& t : cert.tail_vanishing) tails.push_back({{"radius", t.radius}, {"tail", finite_or_null(t.tail)}});
  json out = {{"kernel", cert.kernel_name},
              {"compact", cert.compact},
              {"partition_of_unity_defect", cert.partition_of_unity_defect},
              {"first_moment_defect", cert.first_moment_defect},
              {"m2_finite", cert.m2_finite},
              {"m2_tail_bound", finite_or_null(cert.m2_tail_bound)},
              {"truncation_radius", cert.truncation_radius},
              {"tail_vanishing", tails},
              {"grid", to_json(cert.grid)},
              {"passes", passes(cert)}};
  if (cert.fractional_beta) {
    out["fractional"] = {{"beta", cert.fractional_beta->beta}, {"M_beta", cert.fractional_beta->value}};
  }
  return out;
}

json to_json(const MomentTable& t) {
  json out = {{"kernel", t.kernel_name},   {"m0_defect", t.m0_defect},
              {"m1_defect", t.m1_defect},  {"M0", t.M0},
              {"M1", t.M1},                {"M2", t.M2},
              {"sup_norm", t.sup_norm},    {"truncation_radius", t.truncation_radius},
              {"tail_bound", t.tail_bound}, {"certified", t.certified()},
              {"grid", to_json(t.grid)},   {"sup_method", "grid-sup"}};
  if (t.fractional) out["fractional"] = {{"beta", t.fractional->beta}, {"M_beta", t.fractional->value}};
  return out;
}

json to_json(const ConvergenceReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json jr = {{"w", row.w},
               {"max_abs_residual", row.max_abs_residual},
               {"argmax_x", row.argmax_x},
               {"theorem_bound", row.theorem_bound},
               {"ratio", finite_or_null(row.ratio)}};
    if (row.compact_bound) {
      jr["compact_bound"] = *row.compact_bound;
      jr["compact_ratio"] = finite_or_null(*row.compact_ratio);
    }
    rows.push_back(jr);
  }
  json out = {{"kernel", r.kernel_name},
              {"intervals", json::parse(r.interval_spec)},
              {"function", r.function_name},
              {"mode", to_string(r.mode)},
              {"rows", rows},
              {"fitted_order", r.fitted_order ? json(*r.fitted_order) : json(nullptr)},
              {"delta_star", r.delta_star},
              {"m_star", r.m_star},
              {"modulus_region", {r.modulus_region.lo, r.modulus_region.hi}},
              {"modulus_grid_spacing", r.modulus_grid_spacing},
              {"ratio_tolerance", r.ratio_tolerance},
              {"violations", r.violations()}};
  out["alpha"] = r.alpha ? json(*r.alpha) : json(nullptr);
  if (r.beta) out["beta"] = *r.beta;
  return out;
}

}  // namespace kantorovich

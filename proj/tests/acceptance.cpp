// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "kantorovich/analysis.hpp"
#include "kantorovich/functions.hpp"
#include "kantorovich/kernel.hpp"
#include "kantorovich/moments.hpp"
#include "oracles.hpp"

using namespace kantorovich;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] criterion %d: %s | %s | %.2fs\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Kernel> matrix_kernels() {
  return {Kernel::bspline(2), Kernel::bspline(3), Kernel::spline_combo(3, -1.0, 1.0), Kernel::blackman_harris()};
}

std::vector<IntervalSequence> matrix_intervals() {
  return {IntervalSequence::constant(0.0, 1.0), IntervalSequence::constant(-0.5, 0.5),
          IntervalSequence::seeded_alpha(1.0, 0.5, 2.0, 42)};
}

std::vector<double> doubling(double first, double last) {
  std::vector<double> ws;
  for (double w = first; w <= last; w *= 2.0) ws.push_back(w);
  return ws;
}

std::vector<double> grid21() {
  std::vector<double> xs;
  for (int i = 0; i <= 20; ++i) xs.push_back(-2.0 + 0.2 * i);
  return xs;
}

Outcome admissibility() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  for (const Kernel& k : matrix_kernels()) {
    const std::vector<double> radii = k.is_compact() ? std::vector<double>{1.0, 2.0, 4.0}
                                                     : std::vector<double>{16.0, 256.0, 4096.0};
    const auto cert = certify(k, 1024, radii);
    const double limit = k.is_compact() ? 1e-10 : 1e-6;
    const bool ok = cert.partition_of_unity_defect <= limit && cert.first_moment_defect <= limit &&
                    cert.m2_finite && cert.m2_tail_bound <= 1e-9 && passes(cert);
    o.pass = o.pass && ok;
    o.detail += k.name() + " m0=" + fmt(cert.partition_of_unity_defect) + " m1=" + fmt(cert.first_moment_defect) +
                " tail=" + fmt(cert.m2_tail_bound) + "; ";
  }
  const double secs = seconds_since(t0);
  o.pass = o.pass && secs < 10.0;
  o.detail += "runtime " + fmt(secs) + "s (< 10s)";
  return o;
}

Outcome exact_identities() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> X(-10.0, 10.0);
  std::uniform_real_distribution<double> W(1.0, 1000.0);
  std::uniform_real_distribution<double> A(-1.0, 0.5);
  const auto kernels = matrix_kernels();
  const auto id = functions::identity_clamped(1e7);
  const auto c = functions::constant(-1.75);
  double worst_const = 0.0;
  double worst_lin = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Kernel& k = kernels[static_cast<std::size_t>(i) % kernels.size()];
    const double a = A(rng);
    const auto seq = IntervalSequence::constant(a, a + 0.25 + (0.5 - a) * 0.5);
    const double x = X(rng);
    const double w = W(rng);
    const OperatorConfig cfg(k, seq, w);
    worst_const = std::max(worst_const, std::abs(apply_kantorovich(c, x, cfg) + 1.75));
    const double lhs = w * (apply_kantorovich(id, x, cfg) - x);
    worst_lin = std::max(worst_lin, std::abs(lhs - 0.5 * *seq.alpha()));
  }
  return {worst_const <= 1e-10 && worst_lin <= 1e-8,
          "100 pairs, max |K const - const| = " + fmt(worst_const) + " (<= 1e-10), max |w(K id - x) - alpha/2| = " +
              fmt(worst_lin) + " (<= 1e-8)"};
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto cfg = fixtures::random_compact_config(rng);
    const double got = apply_kantorovich(cfg.f, cfg.x, OperatorConfig(cfg.kernel, cfg.intervals, cfg.w));
    worst = std::max(worst, std::abs(got - fixtures::brute_kantorovich(cfg)));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs < 30.0,
          "50 configs, max deviation " + fmt(worst) + " (<= 1e-9), runtime " + fmt(secs) + "s (< 30s)"};
}

Outcome voronovskaya_convergence() {
  Outcome o;
  const auto ws = doubling(20.0, 640.0);
  const auto xs = grid21();
  for (const auto& f : {functions::square(4.0), functions::sine()}) {
    const auto rep = rate_table(f, Kernel::bspline(2), IntervalSequence::constant(0.0, 1.0), ws, xs,
                                RateMode::voronovskaya);
    double r80 = 0.0;
    double r640 = 0.0;
    for (const auto& r : rep.rows) {
      if (r.w == 80.0) r80 = r.max_abs_residual;
      if (r.w == 640.0) r640 = r.max_abs_residual;
    }
    const double order = rep.fitted_order.value_or(NAN);
    const bool ok = r640 <= 0.25 * r80 && order >= 0.9 && order <= 1.1;
    o.pass = o.pass && ok;
    o.detail += f.name + ": r640/r80=" + fmt(r640 / r80) + " (<= 0.25), order=" + fmt(order) + " (in [0.9,1.1]); ";
  }
  return o;
}

struct MatrixResult {
  int cases = 0;
  int general_violations = 0;
  int compact_cases = 0;
  int compact_violations = 0;
  double worst_ratio = 0.0;
  double worst_compact = 0.0;
};

const MatrixResult& bound_matrix() {
  static const MatrixResult result = [] {
    MatrixResult m;
    const auto ws = doubling(10.0, 640.0);
    const auto xs = grid21();
    const std::vector<TargetFunction> fs{functions::square(4.0), functions::sine(), functions::x_sin3x(4.0)};
    for (const auto& f : fs) {
      for (const auto& k : matrix_kernels()) {
        for (const auto& seq : matrix_intervals()) {
          const auto rep = rate_table(f, k, seq, ws, xs, RateMode::voronovskaya);
          for (const auto& r : rep.rows) {
            m.cases += static_cast<int>(xs.size());
            m.worst_ratio = std::max(m.worst_ratio, r.ratio);
            if (!(r.ratio <= kRatioTolerance)) ++m.general_violations;
            if (r.compact_ratio) {
              m.compact_cases += static_cast<int>(xs.size());
              m.worst_compact = std::max(m.worst_compact, *r.compact_ratio);
              if (!(*r.compact_ratio <= kRatioTolerance)) ++m.compact_violations;
            }
          }
        }
      }
    }
    return m;
  }();
  return result;
}

Outcome theorem2_validity() {
  const auto& m = bound_matrix();
  return {m.general_violations == 0 && m.cases == 3 * 4 * 3 * 7 * 21,
          std::to_string(m.cases) + " (f, kernel, intervals, w, x) cases, " + std::to_string(m.general_violations) +
              " violations, worst ratio " + fmt(m.worst_ratio) + " (<= 1.05)"};
}

Outcome compact_variant() {
  const auto& m = bound_matrix();
  return {m.compact_violations == 0 && m.compact_cases == 3 * 3 * 3 * 7 * 21,
          std::to_string(m.compact_cases) + " compact-kernel cases, " + std::to_string(m.compact_violations) +
              " violations, worst ratio " + fmt(m.worst_compact) + " (<= 1.05)"};
}

Outcome theorem3_validity() {
  Outcome o;
  const auto xs = grid21();
  double worst_ratio = 0.0;
  double worst_margin = INFINITY;
  int runs = 0;
  for (double beta : {0.3, 0.5, 0.7}) {
    const auto f = functions::holder_sine(beta);
    for (const auto& k : matrix_kernels()) {
      for (const auto& seq : matrix_intervals()) {
        const double first = 4.0 * std::ceil(seq.m_star());
        const auto ws = doubling(first, 512.0);
        if (!(ws.front() > 2.0 * seq.m_star())) return {false, "w grid does not satisfy w > 2M*"};
        const auto rep = rate_table(f, k, seq, ws, xs, RateMode::theorem3, RateOptions{.beta = beta});
        for (const auto& r : rep.rows) worst_ratio = std::max(worst_ratio, r.ratio);
        const double order = rep.fitted_order.value_or(-INFINITY);
        worst_margin = std::min(worst_margin, order - (beta - 0.1));
        if (rep.violations() > 0 || order < beta - 0.1) {
          o.pass = false;
          o.detail += "failed: beta=" + fmt(beta) + " " + k.name() + " order=" + fmt(order) + "; ";
        }
        ++runs;
      }
    }
  }
  o.detail += std::to_string(runs) + " (beta, kernel, intervals) runs, worst ratio " + fmt(worst_ratio) +
              " (<= 1.05), min(order - (beta - 0.1)) = " + fmt(worst_margin) + " (>= 0)";
  return o;
}

Outcome concave_majorant_check() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::uniform_int_distribution<int> N(1, 30);
  int bad_concave = 0;
  int bad_dominance = 0;
  int bad_least = 0;
  int witnesses = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = N(rng);
    std::vector<double> d;
    std::vector<double> v;
    double x = 0.0;
    double y = 0.0;
    for (int i = 0; i < n; ++i) {
      x += 1e-3 + U(rng);
      y += U(rng) < 0.2 ? 0.0 : U(rng) * U(rng) * 3.0;
      d.push_back(x);
      v.push_back(y);
    }
    const auto hull = upper_concave_hull(d, v);
    for (std::size_t i = 2; i < hull.size(); ++i) {
      const double s0 = (hull[i - 1].value - hull[i - 2].value) / (hull[i - 1].delta - hull[i - 2].delta);
      const double s1 = (hull[i].value - hull[i - 1].value) / (hull[i].delta - hull[i - 1].delta);
      if (s1 > s0 + 1e-12) ++bad_concave;
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (evaluate_majorant(hull, d[i]) < v[i] - 1e-12) ++bad_dominance;
    }
    for (std::size_t b = 1; b < hull.size(); ++b) {
      auto lowered = hull;
      lowered[b].value -= 1e-6;
      bool violated = false;
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (evaluate_majorant(lowered, d[i]) < v[i]) violated = true;
      }
      ++witnesses;
      if (!violated) ++bad_least;
    }
  }
  return {bad_concave == 0 && bad_dominance == 0 && bad_least == 0,
          "1000 sets: concavity failures " + std::to_string(bad_concave) + ", dominance failures " +
              std::to_string(bad_dominance) + ", least-ness failures " + std::to_string(bad_least) + " of " +
              std::to_string(witnesses) + " lowered breakpoints"};
}

Outcome moment_values() {
  const Kernel b2 = Kernel::bspline(2);
  const auto mt = moment_table(b2);
  const oracle::BruteKernel bk{[](double x) { return oracle::bspline_truncated_power(2, x); }, -1.0, 1.0};
  const double o0 = oracle::absolute_moment(bk, 0.0);
  const double o1 = oracle::absolute_moment(bk, 1.0);
  const double o2 = oracle::absolute_moment(bk, 2.0);
  const double A = theorem2_constant(mt, IntervalSequence::constant(0.0, 1.0).m_star());
  const double dev = std::max({std::abs(mt.M0 - o0), std::abs(mt.M1 - o1), std::abs(mt.M2 - o2),
                               std::abs(mt.M0 - 1.0), std::abs(mt.M1 - 0.5), std::abs(mt.M2 - 0.25)});
  return {dev <= 1e-10 && std::abs(A - 2.25) <= 1e-10,
          "M0=" + fmt(mt.M0) + " M1=" + fmt(mt.M1) + " M2=" + fmt(mt.M2) + ", max deviation " + fmt(dev) +
              " (<= 1e-10), A=" + fmt(A)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "kantorovich_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto put = [&](const char* name, const std::string& text) {
    std::ofstream(dir / name, std::ios::binary) << text;
    return (dir / name).string();
  };
  const auto kernel = put("kernel.json", R"({"type": "spline_combo", "h": 3, "eps0": -1, "eps1": 1})");
  const auto bh = put("bh.json", R"({"type": "blackman_harris"})");
  const auto cfg = put("cfg.json", R"({"kernel": {"type": "bspline", "h": 3},
      "intervals": {"kind": "symmetric_alpha", "alpha": 1, "delta_star": 0.5, "m_star": 2, "seed": 1},
      "function": {"name": "x_sin3x"}, "w_list": [10, 20, 40, 80],
      "x_grid": {"start": -2, "stop": 2, "points": 21}})");
  const auto holder = put("holder.json", R"({"kernel": {"type": "bspline", "h": 2},
      "intervals": {"kind": "seeded_random", "delta_star": 0.25, "m_star": 1, "seed": 1},
      "function": {"name": "holder_sine", "beta": 0.5}, "w_list": [4, 16, 64],
      "x_grid": {"start": -2, "stop": 2, "points": 21}, "mode": "theorem3"})");
  const auto recon_cfg = put("recon.json", R"({"kernel": {"type": "bspline", "h": 2},
      "intervals": {"kind": "symmetric_alpha", "alpha": 1, "delta_star": 0.5, "m_star": 2, "seed": 1},
      "function": "sin", "w": 4, "x_grid": {"start": -1, "stop": 1, "points": 11}})");
  std::string samples = "k,value\n";
  for (int k = -12; k <= 12; ++k) samples += std::to_string(k) + "," + std::to_string(0.1 * k) + "\n";
  const auto samples_path = put("samples.csv", samples);

  const std::vector<std::string> commands{
      "verify-kernel " + kernel, "--format json verify-kernel " + bh, "moments " + kernel + " --beta 0.5",
      "apply --compare-sampling " + cfg, "--format json apply " + cfg, "voronovskaya " + cfg,
      "rate-table " + cfg, "--format json rate-table " + cfg, "bound-check " + cfg, "rate-table " + holder,
      "reconstruct " + samples_path + " " + recon_cfg};
  int identical = 0;
  std::string detail;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string outputs[2];
    int codes[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path out = dir / ("out_" + std::to_string(i) + "_" + std::to_string(run));
      const fs::path log = dir / ("log_" + std::to_string(i) + "_" + std::to_string(run));
      const std::string cmd = std::string(KANTOROVICH_BIN) + " --seed 5 --threads " + std::to_string(1 + 2 * run) +
                              " --output " + out.string() + " " + commands[i] + " > " + log.string() + " 2>&1";
      codes[run] = std::system(cmd.c_str());
      outputs[run] = slurp(out) + "|" + slurp(log);
    }
    if (codes[0] == codes[1] && codes[0] == 0 && outputs[0] == outputs[1] && outputs[0].size() > 1) {
      ++identical;
    } else {
      detail += "differs or failed: '" + commands[i] + "'; ";
    }
  }
  fs::remove_all(dir);
  return {identical == static_cast<int>(commands.size()),
          detail + std::to_string(identical) + "/" + std::to_string(commands.size()) +
              " commands byte-identical across two runs (1 vs 3 threads)"};
}

}  // namespace

int main() {
  report(1, "kernel admissibility", admissibility);
  report(2, "exact identities", exact_identities);
  report(3, "oracle equivalence", oracle_equivalence);
  report(4, "Voronovskaya convergence", voronovskaya_convergence);
  report(5, "first-derivative bound validity", theorem2_validity);
  report(6, "compact-support bound variant", compact_variant);
  report(7, "Holder-order bound validity and rate", theorem3_validity);
  report(8, "concave majorant", concave_majorant_check);
  report(9, "moment values", moment_values);
  report(10, "CLI determinism", determinism);
  std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}

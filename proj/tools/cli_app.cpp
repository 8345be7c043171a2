#include "cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "kantorovich/analysis.hpp"
#include "kantorovich/error.hpp"
#include "kantorovich/functions.hpp"
#include "kantorovich/json_io.hpp"
#include "kantorovich/kernel.hpp"
#include "kantorovich/moments.hpp"
#include "kantorovich/operator.hpp"

namespace kantorovich::cli {

namespace {

using nlohmann::json;

struct GlobalOptions {
  std::string output;
  std::string format;
  int threads = 1;
  std::optional<std::uint64_t> seed;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  return cells;
}

double parse_real(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError(where + ": not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw InputError(where + ": not a finite number: '" + s + "'");
  return v;
}

std::int64_t parse_index(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw InputError(where + ": not an integer: '" + s + "'");
  }
  if (used != s.size()) throw InputError(where + ": not an integer: '" + s + "'");
  return v;
}

// Rows of a CSV file whose header must equal `header`.
std::vector<std::vector<std::string>> read_csv(const std::string& path, const std::vector<std::string>& header) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != header) {
    std::string want;
    for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
    throw InputError("'" + path + "' must start with the header '" + want + "'");
  }
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw InputError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                       " fields");
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

TargetFunction sampled_signal_from_csv(const std::string& path) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : read_csv(path, {"x", "value"})) {
    xs.push_back(parse_real(row[0], path));
    ys.push_back(parse_real(row[1], path));
  }
  return functions::sampled_signal(xs, ys);
}

struct ExperimentConfig {
  json kernel;
  json intervals;
  json function;
  std::vector<double> w_list;
  std::vector<double> x_grid;
  double truncation = kDefaultTruncationTolerance;
  int quadrature_order = kDefaultQuadratureOrder;
  RateMode mode = RateMode::voronovskaya;
  std::optional<double> beta;
  std::string output_path;
  std::string output_format;
};

std::vector<double> grid_from_json(const json& g) {
  std::vector<double> xs;
  if (g.is_array()) {
    for (const auto& v : g) {
      if (!v.is_number()) throw InputError("x_grid entries must be numbers");
      xs.push_back(v.get<double>());
    }
    return xs;
  }
  if (!g.is_object() || !g.contains("start") || !g.contains("stop") || !g.contains("points")) {
    throw InputError("x_grid must be an array or {start, stop, points}");
  }
  const double start = g.at("start").get<double>();
  const double stop = g.at("stop").get<double>();
  const long long points = g.at("points").get<long long>();
  if (points < 0) throw InputError("x_grid.points must be nonnegative");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw InputError("x_grid bounds must be finite");
  for (long long i = 0; i < points; ++i) {
    xs.push_back(points == 1 ? start
                             : (i == points - 1 ? stop
                                                : start + (stop - start) * static_cast<double>(i) /
                                                              static_cast<double>(points - 1)));
  }
  return xs;
}

ExperimentConfig load_config(const std::string& path, const GlobalOptions& g) {
  const json j = read_json(path);
  if (!j.is_object()) throw InputError("config must be a JSON object");
  ExperimentConfig c;
  try {
    for (const char* key : {"kernel", "intervals", "function"}) {
      if (!j.contains(key)) throw InputError(std::string("config is missing '") + key + "'");
    }
    c.kernel = j.at("kernel");
    c.intervals = j.at("intervals");
    c.function = j.at("function");
    if (g.seed && c.intervals.is_object() && c.intervals.contains("kind") &&
        c.intervals.at("kind") != "constant") {
      c.intervals["seed"] = *g.seed;
    }
    if (j.contains("w_list")) {
      for (const auto& w : j.at("w_list")) c.w_list.push_back(w.get<double>());
    } else if (j.contains("w")) {
      c.w_list.push_back(j.at("w").get<double>());
    } else {
      throw InputError("config is missing 'w_list'");
    }
    if (c.w_list.empty()) throw InputError("w_list must be nonempty");
    for (std::size_t i = 0; i < c.w_list.size(); ++i) {
      if (!(c.w_list[i] > 0.0) || !std::isfinite(c.w_list[i])) throw InputError("w_list entries must be positive");
      if (i > 0 && !(c.w_list[i] > c.w_list[i - 1])) throw InputError("w_list must be increasing");
    }
    if (j.contains("x_grid")) c.x_grid = grid_from_json(j.at("x_grid"));
    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      if (t.contains("truncation")) c.truncation = t.at("truncation").get<double>();
      if (t.contains("quadrature_order")) c.quadrature_order = t.at("quadrature_order").get<int>();
    }
    if (j.contains("mode")) {
      const auto m = j.at("mode").get<std::string>();
      if (m == "voronovskaya") c.mode = RateMode::voronovskaya;
      else if (m == "theorem3") c.mode = RateMode::theorem3;
      else throw InputError("unknown mode '" + m + "'");
    }
    if (j.contains("beta")) c.beta = j.at("beta").get<double>();
    if (j.contains("output")) {
      const json& o = j.at("output");
      if (o.is_string()) {
        c.output_path = o.get<std::string>();
      } else {
        if (o.contains("path")) c.output_path = o.at("path").get<std::string>();
        if (o.contains("format")) c.output_format = o.at("format").get<std::string>();
      }
    }
  } catch (const json::exception& e) {
    throw InputError("invalid config '" + path + "': " + e.what());
  }
  return c;
}

TargetFunction make_function(const json& spec) {
  if (spec.is_object() && spec.value("name", "") == "sampled_signal") {
    if (!spec.contains("path")) throw InputError("sampled_signal needs a 'path'");
    return sampled_signal_from_csv(spec.at("path").get<std::string>());
  }
  return function_from_json(spec);
}

// Buffers the report and writes it once, to the --output file or the provided stream.
class Report {
 public:
  Report(const GlobalOptions& g, std::ostream& out, std::string config_path = {}, std::string config_format = {})
      : out_(out), path_(g.output.empty() ? std::move(config_path) : g.output) {
    format_ = !g.format.empty() ? g.format : (!config_format.empty() ? config_format : "csv");
    if (format_ != "csv" && format_ != "json") throw InputError("format must be csv or json");
  }

  bool json_format() const { return format_ == "json"; }
  bool to_stdout() const { return path_.empty(); }
  std::ostringstream& body() { return body_; }

  void write_json(const json& j) { body_ << j.dump(2) << '\n'; }

  void flush() {
    if (path_.empty()) {
      out_ << body_.str();
      out_.flush();
      return;
    }
    std::ofstream f(path_, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write '" + path_ + "'");
    f << body_.str();
  }

 private:
  std::ostream& out_;
  std::string path_;
  std::string format_;
  std::ostringstream body_;
};

json spec_json_of(const std::string& path) {
  json j = read_json(path);
  if (j.is_object() && j.contains("kernel")) j = j.at("kernel");
  return j;
}

std::vector<double> default_radii(const Kernel& k) {
  std::vector<double> radii;
  if (k.is_compact()) {
    const auto& c = std::get<CompactInterval>(k.support());
    const double reach = std::max(std::abs(c.lo), std::abs(c.hi));
    radii = reach > 0.0 ? std::vector<double>{0.5 * reach, reach} : std::vector<double>{1.0};
  } else {
    for (double r = 16.0; r <= 4096.0; r *= 4.0) radii.push_back(r);
  }
  return radii;
}

int cmd_verify_kernel(const std::string& spec_path, std::optional<double> beta, int grid, const GlobalOptions& g,
                      std::ostream& out, std::ostream& err) {
  const Kernel kernel = Kernel::from_spec(kernel_spec_from_json(spec_json_of(spec_path)));
  Report report(g, out);
  const auto radii = default_radii(kernel);
  const auto cert = certify(kernel, grid, radii, beta);
  const bool ok = passes(cert);
  if (report.json_format()) {
    report.write_json(to_json(cert));
  } else {
    auto& b = report.body();
    b << "field,value\n";
    b << "kernel," << cert.kernel_name << '\n';
    b << "compact," << (cert.compact ? "true" : "false") << '\n';
    b << "partition_of_unity_defect," << num(cert.partition_of_unity_defect) << '\n';
    b << "first_moment_defect," << num(cert.first_moment_defect) << '\n';
    b << "m2_finite," << (cert.m2_finite ? "true" : "false") << '\n';
    b << "m2_tail_bound," << num(cert.m2_tail_bound) << '\n';
    b << "truncation_radius," << num(cert.truncation_radius) << '\n';
    for (const auto& t : cert.tail_vanishing) b << "tail_at_radius_" << num(t.radius) << ',' << num(t.tail) << '\n';
    if (cert.fractional_beta) b << "M_beta," << num(cert.fractional_beta->value) << '\n';
    b << "passes," << (ok ? "true" : "false") << '\n';
  }
  report.flush();
  if (!ok) {
    err << "kernel " << cert.kernel_name << " failed certification (partition defect "
        << num(cert.partition_of_unity_defect) << ", first-moment defect " << num(cert.first_moment_defect) << ")\n";
    return kExitDomain;
  }
  return kExitOk;
}

int cmd_moments(const std::string& spec_path, std::optional<double> beta, int grid, const GlobalOptions& g,
                std::ostream& out) {
  const Kernel kernel = Kernel::from_spec(kernel_spec_from_json(spec_json_of(spec_path)));
  Report report(g, out);
  MomentOptions opts;
  opts.grid.points = grid;
  const MomentTable t = moment_table(kernel, beta, opts);
  if (report.json_format()) {
    report.write_json(to_json(t));
  } else {
    auto& b = report.body();
    b << "quantity,value\n";
    b << "M0," << num(t.M0) << '\n';
    b << "M1," << num(t.M1) << '\n';
    b << "M2," << num(t.M2) << '\n';
    if (t.fractional) b << "M_beta," << num(t.fractional->value) << '\n';
    b << "m0_defect," << num(t.m0_defect) << '\n';
    b << "m1_defect," << num(t.m1_defect) << '\n';
    b << "sup_norm," << num(t.sup_norm) << '\n';
    b << "truncation_radius," << num(t.truncation_radius) << '\n';
    b << "tail_bound," << num(t.tail_bound) << '\n';
  }
  report.flush();
  return kExitOk;
}

struct Setup {
  ExperimentConfig config;
  Kernel kernel;
  IntervalSequence intervals;
};

Setup setup(const std::string& config_path, const GlobalOptions& g) {
  ExperimentConfig c = load_config(config_path, g);
  Kernel k = Kernel::from_spec(kernel_spec_from_json(c.kernel));
  IntervalSequence s = intervals_from_json(c.intervals);
  return {std::move(c), std::move(k), std::move(s)};
}

int cmd_apply(const std::string& config_path, const std::string& grid_csv, bool compare, const GlobalOptions& g,
              std::ostream& out) {
  Setup s = setup(config_path, g);
  const TargetFunction f = make_function(s.config.function);
  std::vector<double> grid = s.config.x_grid;
  if (!grid_csv.empty()) {
    grid.clear();
    for (const auto& row : read_csv(grid_csv, {"x"})) grid.push_back(parse_real(row[0], grid_csv));
  }
  Report report(g, out, s.config.output_path, s.config.output_format);
  json rows = json::array();
  if (!report.json_format()) report.body() << (compare ? "w,x,kantorovich,sampling\n" : "w,x,kantorovich\n");
  for (double w : s.config.w_list) {
    const OperatorConfig cfg(s.kernel, s.intervals, w, s.config.truncation, s.config.quadrature_order);
    const auto values = apply_on_grid(f, grid, cfg, g.threads);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::optional<double> t;
      if (compare) t = apply_generalized_sampling(f, grid[i], cfg);
      if (report.json_format()) {
        json r = {{"w", w}, {"x", grid[i]}, {"kantorovich", values[i]}};
        if (t) r["sampling"] = *t;
        rows.push_back(r);
      } else {
        report.body() << num(w) << ',' << num(grid[i]) << ',' << num(values[i]);
        if (t) report.body() << ',' << num(*t);
        report.body() << '\n';
      }
    }
  }
  if (report.json_format()) {
    report.write_json({{"kernel", s.kernel.name()},
                       {"intervals", to_json(s.intervals)},
                       {"function", f.name},
                       {"rows", rows}});
  }
  report.flush();
  return kExitOk;
}

int cmd_voronovskaya(const std::string& config_path, const GlobalOptions& g, std::ostream& out) {
  Setup s = setup(config_path, g);
  const TargetFunction f = make_function(s.config.function);
  if (!s.intervals.alpha()) throw HypothesisError("voronovskaya residual requires constant a_k + b_k");
  Report report(g, out, s.config.output_path, s.config.output_format);
  json rows = json::array();
  if (!report.json_format()) report.body() << "w,x,residual\n";
  for (double w : s.config.w_list) {
    const OperatorConfig cfg(s.kernel, s.intervals, w, s.config.truncation, s.config.quadrature_order);
    for (double x : s.config.x_grid) {
      const double r = voronovskaya_residual(f, x, cfg);
      if (report.json_format()) {
        rows.push_back({{"w", w}, {"x", x}, {"residual", r}});
      } else {
        report.body() << num(w) << ',' << num(x) << ',' << num(r) << '\n';
      }
    }
  }
  if (report.json_format()) {
    report.write_json({{"kernel", s.kernel.name()},
                       {"intervals", to_json(s.intervals)},
                       {"function", f.name},
                       {"alpha", *s.intervals.alpha()},
                       {"rows", rows}});
  }
  report.flush();
  return kExitOk;
}

ConvergenceReport run_rates(const Setup& s, const TargetFunction& f, const GlobalOptions& g) {
  RateOptions opts;
  opts.truncation_tolerance = s.config.truncation;
  opts.quadrature_order = s.config.quadrature_order;
  opts.beta = s.config.beta;
  opts.threads = g.threads;
  return rate_table(f, s.kernel, s.intervals, s.config.w_list, s.config.x_grid, s.config.mode, opts);
}

int cmd_rate_table(const std::string& config_path, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  Setup s = setup(config_path, g);
  const TargetFunction f = make_function(s.config.function);
  const ConvergenceReport rep = run_rates(s, f, g);
  Report report(g, out, s.config.output_path, s.config.output_format);
  if (report.json_format()) {
    report.write_json(to_json(rep));
  } else {
    const bool compact = !rep.rows.empty() && rep.rows.front().compact_bound.has_value();
    auto& b = report.body();
    b << "w,max_abs_residual,argmax_x,theorem_bound,ratio" << (compact ? ",compact_bound,compact_ratio" : "") << '\n';
    for (const auto& r : rep.rows) {
      b << num(r.w) << ',' << num(r.max_abs_residual) << ',' << num(r.argmax_x) << ',' << num(r.theorem_bound) << ','
        << num(r.ratio);
      if (compact) b << ',' << num(*r.compact_bound) << ',' << num(*r.compact_ratio);
      b << '\n';
    }
  }
  report.flush();
  out << "fitted_order: " << (rep.fitted_order ? num(*rep.fitted_order) : std::string("n/a")) << '\n';
  if (const int v = rep.violations(); v > 0) {
    err << v << " row(s) exceed the bound ratio tolerance " << num(rep.ratio_tolerance) << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

int cmd_bound_check(const std::string& config_path, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  Setup s = setup(config_path, g);
  const TargetFunction f = make_function(s.config.function);
  const ConvergenceReport rep = run_rates(s, f, g);
  Report report(g, out, s.config.output_path, s.config.output_format);
  const double tol = rep.ratio_tolerance;
  auto within = [tol](const RateRow& r) {
    return r.ratio <= tol && (!r.compact_ratio || *r.compact_ratio <= tol);
  };
  if (report.json_format()) {
    json rows = json::array();
    for (const auto& r : rep.rows) {
      json jr = {{"w", r.w},
                 {"max_abs_residual", r.max_abs_residual},
                 {"theorem_bound", r.theorem_bound},
                 {"ratio", std::isfinite(r.ratio) ? json(r.ratio) : json(nullptr)},
                 {"within_tolerance", within(r)}};
      if (r.compact_bound) jr["compact_bound"] = *r.compact_bound;
      rows.push_back(jr);
    }
    report.write_json({{"mode", to_string(rep.mode)},
                       {"ratio_tolerance", tol},
                       {"violations", rep.violations()},
                       {"rows", rows}});
  } else {
    auto& b = report.body();
    b << "w,max_abs_residual,theorem_bound,ratio,compact_bound,compact_ratio,within_tolerance\n";
    for (const auto& r : rep.rows) {
      b << num(r.w) << ',' << num(r.max_abs_residual) << ',' << num(r.theorem_bound) << ',' << num(r.ratio) << ','
        << (r.compact_bound ? num(*r.compact_bound) : "") << ',' << (r.compact_ratio ? num(*r.compact_ratio) : "")
        << ',' << (within(r) ? "true" : "false") << '\n';
    }
  }
  report.flush();
  out << "violations: " << rep.violations() << '\n';
  if (rep.violations() > 0) {
    err << "bound check failed at ratio tolerance " << num(tol) << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

int cmd_reconstruct(const std::string& samples_path, const std::string& config_path, const GlobalOptions& g,
                    std::ostream& out) {
  Setup s = setup(config_path, g);
  if (s.config.w_list.size() != 1) throw InputError("reconstruct needs exactly one w");
  std::map<std::int64_t, double> samples;
  for (const auto& row : read_csv(samples_path, {"k", "value"})) {
    const std::int64_t k = parse_index(row[0], samples_path);
    if (!samples.emplace(k, parse_real(row[1], samples_path)).second) {
      throw InputError(samples_path + ": duplicate k=" + row[0]);
    }
  }
  const OperatorConfig cfg(s.kernel, s.intervals, s.config.w_list.front(), s.config.truncation,
                           s.config.quadrature_order);
  Report report(g, out, s.config.output_path, s.config.output_format);
  json rows = json::array();
  if (!report.json_format()) report.body() << "x,reconstruction\n";
  for (double x : s.config.x_grid) {
    const double v = apply_from_samples(samples, x, cfg);
    if (report.json_format()) {
      rows.push_back({{"x", x}, {"reconstruction", v}});
    } else {
      report.body() << num(x) << ',' << num(v) << '\n';
    }
  }
  if (report.json_format()) report.write_json({{"w", cfg.w()}, {"rows", rows}});
  report.flush();
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Kantorovich sampling operators: kernels, moments, experiments"};
  app.require_subcommand(1);
  GlobalOptions g;
  std::uint64_t seed = 0;
  app.add_option("--output,-o", g.output, "Report file (default: stdout or the config's output path)");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Override the seed of seeded interval sequences");

  std::string spec_path;
  std::string config_path;
  std::string samples_path;
  std::string grid_csv;
  bool compare = false;
  double beta = 0.0;
  int grid = SupGrid{}.points;

  auto* verify = app.add_subcommand("verify-kernel", "Certify kernel admissibility");
  verify->add_option("spec", spec_path, "Kernel spec JSON")->required();
  auto* verify_beta = verify->add_option("--beta", beta, "Also estimate M_beta");
  verify->add_option("--grid", grid, "Sup grid points")->check(CLI::Range(2, 1 << 20));

  auto* moments = app.add_subcommand("moments", "Moment table of a kernel");
  moments->add_option("spec", spec_path, "Kernel spec JSON")->required();
  auto* moments_beta = moments->add_option("--beta", beta, "Fractional order in (0,1)");
  moments->add_option("--grid", grid, "Sup grid points")->check(CLI::Range(2, 1 << 20));

  auto* apply = app.add_subcommand("apply", "Evaluate K_w f on a grid");
  apply->add_option("config", config_path, "Experiment config JSON")->required();
  apply->add_flag("--compare-sampling", compare, "Add the generalized sampling series column");
  apply->add_option("--grid-csv", grid_csv, "CSV with header 'x' replacing the config grid");

  auto* voron = app.add_subcommand("voronovskaya", "Residuals w(K_w f - f) - (alpha/2) f'");
  voron->add_option("config", config_path, "Experiment config JSON")->required();

  auto* rates = app.add_subcommand("rate-table", "Convergence report with fitted order");
  rates->add_option("config", config_path, "Experiment config JSON")->required();

  auto* bounds = app.add_subcommand("bound-check", "Check residuals against the error bounds");
  bounds->add_option("config", config_path, "Experiment config JSON")->required();

  auto* recon = app.add_subcommand("reconstruct", "Series from measured cell averages");
  recon->add_option("samples", samples_path, "CSV with header 'k,value'")->required();
  recon->add_option("config", config_path, "Experiment config JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (*seed_opt) g.seed = seed;

  try {
    if (*verify) {
      return cmd_verify_kernel(spec_path, *verify_beta ? std::optional(beta) : std::nullopt, grid, g, out, err);
    }
    if (*moments) return cmd_moments(spec_path, *moments_beta ? std::optional(beta) : std::nullopt, grid, g, out);
    if (*apply) return cmd_apply(config_path, grid_csv, compare, g, out);
    if (*voron) return cmd_voronovskaya(config_path, g, out);
    if (*rates) return cmd_rate_table(config_path, g, out, err);
    if (*bounds) return cmd_bound_check(config_path, g, out, err);
    if (*recon) return cmd_reconstruct(samples_path, config_path, g, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const HypothesisError& e) {
    err << "hypothesis violation: " << e.what() << '\n';
    return kExitDomain;
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitInput;
}

}  // namespace kantorovich::cli

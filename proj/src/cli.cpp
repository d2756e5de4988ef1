#include "spdc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "spdc/config.hpp"
#include "spdc/experiments.hpp"
#include "spdc/format.hpp"
#include "spdc/output.hpp"
#include "spdc/validate.hpp"

namespace spdc {

namespace {

// Default tau' scales, 1/fs.
constexpr double kDipScale = 0.014;
constexpr double kShapeScale = 0.2;

struct Options {
  std::string config_path;
  std::string out_path = "-";
  std::string svg_path;
  std::optional<int> points;
  std::optional<std::string> method;
  std::optional<std::string> beta;
  std::optional<std::string> delay;
  std::optional<double> gamma;
  std::optional<double> alpha;
  std::optional<std::string> delay_min;
  std::optional<std::string> delay_max;
  std::optional<double> scale;
  std::vector<double> gamma_range;
  std::vector<double> bracket;
  std::optional<double> tol;
  int tuples = 40;
};

// "70fs", "70 fs", "0.07 ps" or a bare number of femtoseconds.
double cli_time(const std::string& option, const std::string& text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc() && ptr == text.data() + text.size()) return value;
  try {
    return parse_time(text);
  } catch (const ConfigError&) {
    throw ConfigError(option, option + ": expected a time such as '50fs', got '" + text + "'");
  }
}

SimulationConfig load_config(const Options& o) {
  const std::string text = o.config_path.empty() ? std::string(kDefaultProfile)
                                                 : read_text_file(o.config_path);
  try {
    return parse_config(text);
  } catch (const ConfigError& ex) {
    const std::string where = o.config_path.empty() ? "default profile" : o.config_path;
    throw ConfigError(ex.field(), where + ": " + ex.what());
  }
}

// Applies command-line overrides shared by all subcommands.
void apply_common(const Options& o, SimulationConfig& c) {
  if (o.points) {
    if (*o.points < 2) throw ConfigError("points", "--points: need at least 2");
    c.sweep.points = *o.points;
  }
  if (o.method) c.sweep.method = parse_rate_method(*o.method);
  if (o.beta) {
    c.beta = cli_time("--beta", *o.beta);
    if (!(c.beta > 0.0)) throw ConfigError("beta", "--beta: must be positive");
  }
  if (o.delay) c.sweep.delay = cli_time("--delay", *o.delay);
  if (o.delay_min) c.sweep.delay_min = cli_time("--delay-min", *o.delay_min);
  if (o.delay_max) c.sweep.delay_max = cli_time("--delay-max", *o.delay_max);
  if (o.scale) {
    if (!(*o.scale > 0.0)) throw ConfigError("tau_prime_scale", "--scale: must be positive");
    c.sweep.tau_prime_scale = *o.scale;
  }
  if (o.gamma || o.alpha) {
    if (o.gamma && o.alpha) throw ConfigError("gamma", "--gamma and --alpha are mutually exclusive");
    c.gamma = o.gamma;
    c.alpha = o.alpha;
  }
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw ConfigError("optimize_tol", "--tol: must be positive");
    c.sweep.optimize_tol = *o.tol;
  }
}

void fill_delay_range(SimulationConfig& c, double half_width, double scale) {
  if (!c.sweep.delay_min) c.sweep.delay_min = -half_width;
  if (!c.sweep.delay_max) c.sweep.delay_max = half_width;
  if (!c.sweep.tau_prime_scale) c.sweep.tau_prime_scale = scale;
  if (!(*c.sweep.delay_min < *c.sweep.delay_max)) {
    throw ConfigError("delay_max", "delay range is empty: delay_min must be below delay_max");
  }
}

ScanOptions scan_options(const SimulationConfig& c) {
  ScanOptions opt;
  opt.method = c.sweep.method;
  opt.spot_checks = c.sweep.spot_checks;
  return opt;
}

void echo_config(const SimulationConfig& c, const std::string& command, Metadata& metadata) {
  metadata.emplace_back("command", command);
  std::istringstream lines(serialize_config(c));
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find(" = ");
    metadata.emplace_back("cfg." + line.substr(0, eq), line.substr(eq + 3));
  }
}

void emit(const std::string& path, const std::string& data, std::ostream& out) {
  if (path == "-") {
    out << data;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << data;
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

void emit_curve(const Curve& curve, const Options& o, std::ostream& out) {
  std::ostringstream csv;
  write_curve_csv(curve, csv);
  std::string svg;
  if (!o.svg_path.empty()) {
    std::ostringstream s;
    write_curve_svg(curve, s);
    svg = s.str();
  }
  emit(o.out_path, csv.str(), out);
  if (!o.svg_path.empty()) emit(o.svg_path, svg, out);
}

int cmd_dip(const Options& o, std::ostream& out) {
  SimulationConfig c = load_config(o);
  apply_common(o, c);
  c.gamma.reset();
  c.alpha.reset();
  fill_delay_range(c, 2.0 * c.timing().tau1, kDipScale);
  Curve curve = delay_scan(c.timing(), std::nullopt, *c.sweep.delay_min, *c.sweep.delay_max,
                           c.sweep.points, c.quadrature, *c.sweep.tau_prime_scale, scan_options(c));
  echo_config(c, "dip", curve.metadata);
  emit_curve(curve, o, out);
  return kExitOk;
}

int cmd_shape(const Options& o, std::ostream& out) {
  SimulationConfig c = load_config(o);
  apply_common(o, c);
  if (!c.gamma && !c.alpha) {
    throw ConfigError("gamma", "shape needs a modulation depth: pass --gamma or --alpha");
  }
  const double tau1 = c.timing().tau1;
  fill_delay_range(c, 3.0 * tau1 + 3.0 * c.beta, kShapeScale);
  const auto filter = c.filter();
  Curve curve = delay_scan(c.timing(), filter, *c.sweep.delay_min, *c.sweep.delay_max,
                           c.sweep.points, c.quadrature, *c.sweep.tau_prime_scale, scan_options(c));
  const PeakResult peak =
      find_peak_delay(c.timing(), filter, *c.sweep.delay_min, *c.sweep.delay_max, 1e-9);
  curve.metadata.emplace_back("peak_delay_fs", format_exact(peak.delay));
  curve.metadata.emplace_back("peak_tau_prime", format_exact(peak.delay * *c.sweep.tau_prime_scale));
  curve.metadata.emplace_back("peak_rate", format_exact(peak.rate));
  echo_config(c, "shape", curve.metadata);
  emit_curve(curve, o, out);
  return kExitOk;
}

int cmd_gamma_scan(const Options& o, std::ostream& out) {
  SimulationConfig c = load_config(o);
  apply_common(o, c);
  if (!o.gamma_range.empty()) {
    c.sweep.gamma_min = o.gamma_range[0];
    c.sweep.gamma_max = o.gamma_range[1];
  }
  if (!(c.sweep.gamma_min < c.sweep.gamma_max)) {
    throw ConfigError("gamma_max", "gamma range is empty: gamma_min must be below gamma_max");
  }
  c.gamma.reset();
  c.alpha.reset();
  Curve curve = gamma_scan(c.timing(), c.beta, c.sweep.delay, c.sweep.gamma_min, c.sweep.gamma_max,
                           c.sweep.points, c.quadrature, scan_options(c));
  echo_config(c, "gamma-scan", curve.metadata);
  emit_curve(curve, o, out);
  return kExitOk;
}

int cmd_optimize(const Options& o, std::ostream& out) {
  SimulationConfig c = load_config(o);
  apply_common(o, c);
  if (!o.bracket.empty()) {
    c.sweep.gamma_min = o.bracket[0];
    c.sweep.gamma_max = o.bracket[1];
  }
  if (!(c.sweep.gamma_min < c.sweep.gamma_max)) {
    throw ConfigError("bracket", "--bracket: lower end must be below upper end");
  }
  c.gamma.reset();
  c.alpha.reset();
  const OptimizationResult result = optimize_gamma(c.timing(), c.beta, c.sweep.delay,
                                                   c.sweep.gamma_min, c.sweep.gamma_max,
                                                   c.sweep.optimize_tol);
  Metadata metadata;
  metadata.emplace_back("tau1_fs", format_exact(c.timing().tau1));
  metadata.emplace_back("beta_fs", format_exact(c.beta));
  metadata.emplace_back("delay_fs", format_exact(c.sweep.delay));
  echo_config(c, "optimize", metadata);
  std::ostringstream csv;
  write_optimization_csv(result, metadata, csv);
  emit(o.out_path, csv.str(), out);
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  SimulationConfig c = load_config(o);
  apply_common(o, c);
  if (o.tuples < 1) throw ConfigError("tuples", "--tuples: need at least 1");
  ValidationOptions vo;
  vo.tuples = o.tuples;
  std::ostringstream report;
  const bool ok = print_report(run_validation(c, vo), report);
  emit(o.out_path, report.str(), out);
  if (!ok) {
    err << "spdc: validation failed\n";
    return kExitNumericalError;
  }
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-photon coincidence rates of type-II SPDC with a spectral phase filter", "spdc"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "Config file (default: built-in profile)");
    sub->add_option("--out", o.out_path, "Output path, '-' for standard output");
    sub->add_option("--method", o.method, "direct | series | closed_form");
  };
  auto add_sweep = [&](CLI::App* sub) {
    add_common(sub);
    sub->add_option("--svg", o.svg_path, "Also write an SVG line plot here");
    sub->add_option("--points", o.points, "Number of samples");
  };
  auto add_delay_range = [&](CLI::App* sub) {
    sub->add_option("--delay-min", o.delay_min, "Lower T = tau + tau2, e.g. -140fs");
    sub->add_option("--delay-max", o.delay_max, "Upper T, e.g. 140fs");
    sub->add_option("--scale", o.scale, "tau' = scale * T, in 1/fs");
  };

  CLI::App* dip = app.add_subcommand("dip", "Unmodulated coincidence dip against tau'");
  add_sweep(dip);
  add_delay_range(dip);

  CLI::App* shape = app.add_subcommand("shape", "Phase-modulated coincidence rate against tau'");
  add_sweep(shape);
  add_delay_range(shape);
  shape->add_option("--gamma", o.gamma, "Effective modulation depth");
  shape->add_option("--alpha", o.alpha, "Filter amplitude (converted to gamma)");
  shape->add_option("--beta", o.beta, "Filter period, e.g. 50fs");

  CLI::App* gscan = app.add_subcommand("gamma-scan", "Coincidence rate at fixed T against gamma");
  add_sweep(gscan);
  gscan->add_option("--gamma-range", o.gamma_range, "Lower and upper gamma")->expected(2);
  gscan->add_option("--beta", o.beta, "Filter period, e.g. 50fs");
  gscan->add_option("--delay", o.delay, "Fixed T, e.g. 0fs");

  CLI::App* opt = app.add_subcommand("optimize", "Maximize the rate at fixed T over gamma");
  add_common(opt);
  opt->add_option("--bracket", o.bracket, "Lower and upper gamma")->expected(2);
  opt->add_option("--beta", o.beta, "Filter period, e.g. 70fs");
  opt->add_option("--delay", o.delay, "Fixed T, e.g. 0fs");
  opt->add_option("--tol", o.tol, "Gamma tolerance");

  CLI::App* val = app.add_subcommand("validate", "Cross-check evaluation methods and print a report");
  add_common(val);
  val->add_option("--tuples", o.tuples, "Random (T, gamma, beta) samples");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "spdc: " << e.what() << '\n';
    err << "run 'spdc --help' for usage\n";
    return kExitInputError;
  }

  try {
    if (dip->parsed()) return cmd_dip(o, out);
    if (shape->parsed()) return cmd_shape(o, out);
    if (gscan->parsed()) return cmd_gamma_scan(o, out);
    if (opt->parsed()) return cmd_optimize(o, out);
    return cmd_validate(o, out, err);
  } catch (const ConvergenceError& e) {
    err << "spdc: numerical failure: " << e.what() << '\n';
    return kExitNumericalError;
  } catch (const SpotCheckError& e) {
    err << "spdc: numerical failure: " << e.what() << '\n';
    return kExitNumericalError;
  } catch (const IoError& e) {
    err << "spdc: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "spdc: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "spdc: error: " << e.what() << '\n';
    return kExitNumericalError;
  }
}

}  // namespace spdc

#include "spdc/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "spdc/format.hpp"

namespace spdc {

const std::string_view kDefaultProfile =
    "# Collinear type-II BBO source, degenerate photons at 700 nm\n"
    "inv_group_velocity_diff = 2.5 ps/cm\n"
    "crystal_length = 0.56 mm\n"
    "# puts tau2 = (1/u_o - 1/u_e) z at 1.3e-10 s\n"
    "detector_distance = 520 mm\n"
    "degenerate_wavelength = 700 nm\n"
    "beta = 50 fs\n";

namespace {

// Exact multipliers into femtoseconds and nanometres.
using UnitTable = std::map<std::string, double, std::less<>>;

const UnitTable& time_to_fs() {
  static const UnitTable table = {{"fs", 1.0}, {"ps", 1e3}, {"ns", 1e6}, {"s", 1e15}};
  return table;
}

const UnitTable& length_to_nm() {
  static const UnitTable table = {{"nm", 1.0}, {"mm", 1e6}, {"cm", 1e7}, {"m", 1e9}};
  return table;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Quantity {
  double value;
  std::string unit;
};

class LineError {
 public:
  LineError(int line, std::string key) : line_(line), key_(std::move(key)) {}

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream msg;
    msg << "line " << line_ << ": " << key_ << ": " << what;
    throw ConfigError(key_, msg.str());
  }

 private:
  int line_;
  std::string key_;
};

Quantity split_quantity(std::string_view text, const LineError& err) {
  text = trim(text);
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr == begin) err.fail("expected a number, got '" + std::string(text) + "'");
  if (!std::isfinite(value)) err.fail("value must be finite");
  return Quantity{value, std::string(trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr))))};
}

double unit_factor(const UnitTable& table, std::string_view unit,
                   const char* kind, const LineError& err) {
  const auto it = table.find(unit);
  if (it == table.end()) {
    err.fail("malformed unit '" + std::string(unit) + "' (expected a " + kind + " unit)");
  }
  return it->second;
}

double dimensionless(std::string_view text, const LineError& err) {
  const Quantity q = split_quantity(text, err);
  if (!q.unit.empty()) err.fail("unexpected unit '" + q.unit + "' on a dimensionless value");
  return q.value;
}

double time_fs(std::string_view text, const LineError& err) {
  const Quantity q = split_quantity(text, err);
  if (q.unit.empty()) err.fail("missing time unit (fs, ps, ns, s)");
  return q.value * unit_factor(time_to_fs(), q.unit, "time", err);
}

double length_nm(std::string_view text, const LineError& err) {
  const Quantity q = split_quantity(text, err);
  if (q.unit.empty()) err.fail("missing length unit (nm, mm, cm, m)");
  return q.value * unit_factor(length_to_nm(), q.unit, "length", err);
}

double length_mm(std::string_view text, const LineError& err) {
  const Quantity q = split_quantity(text, err);
  if (q.unit.empty()) err.fail("missing length unit (nm, mm, cm, m)");
  if (q.unit == "mm") return q.value;
  return q.value * unit_factor(length_to_nm(), q.unit, "length", err) / 1e6;
}

double inverse_velocity_fs_per_mm(std::string_view text, const LineError& err) {
  const Quantity q = split_quantity(text, err);
  const auto slash = q.unit.find('/');
  if (slash == std::string::npos) err.fail("malformed unit '" + q.unit + "' (expected time/length, e.g. ps/cm)");
  const double time = unit_factor(time_to_fs(), trim(std::string_view(q.unit).substr(0, slash)), "time", err);
  const double length =
      unit_factor(length_to_nm(), trim(std::string_view(q.unit).substr(slash + 1)), "length", err) / 1e6;
  return q.value * time / length;
}

double per_fs(std::string_view text, const LineError& err) {
  const Quantity q = split_quantity(text, err);
  const std::string_view unit = q.unit;
  if (unit.substr(0, 2) != "1/") err.fail("malformed unit '" + q.unit + "' (expected 1/s, 1/ps or 1/fs)");
  return q.value / unit_factor(time_to_fs(), trim(unit.substr(2)), "time", err);
}

long integer(std::string_view text, const LineError& err) {
  text = trim(text);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    err.fail("expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

void require_positive(double v, const LineError& err) {
  if (!(v > 0.0)) err.fail("out of range: must be positive");
}

using Handler = std::function<void(std::string_view, const LineError&, SimulationConfig&)>;

const std::map<std::string, Handler, std::less<>>& handlers() {
  static const std::map<std::string, Handler, std::less<>> table = {
      {"inv_group_velocity_diff",
       [](auto v, const auto& e, auto& c) {
         c.optical.inv_group_velocity_diff = inverse_velocity_fs_per_mm(v, e);
         require_positive(c.optical.inv_group_velocity_diff, e);
       }},
      {"crystal_length",
       [](auto v, const auto& e, auto& c) {
         c.optical.crystal_length = length_mm(v, e);
         require_positive(c.optical.crystal_length, e);
       }},
      {"detector_distance",
       [](auto v, const auto& e, auto& c) {
         c.optical.detector_distance = length_mm(v, e);
         require_positive(c.optical.detector_distance, e);
       }},
      {"degenerate_wavelength",
       [](auto v, const auto& e, auto& c) {
         c.optical.degenerate_wavelength = length_nm(v, e);
         require_positive(c.optical.degenerate_wavelength, e);
       }},
      {"beta",
       [](auto v, const auto& e, auto& c) {
         c.beta = time_fs(v, e);
         require_positive(c.beta, e);
       }},
      {"gamma", [](auto v, const auto& e, auto& c) { c.gamma = dimensionless(v, e); }},
      {"alpha", [](auto v, const auto& e, auto& c) { c.alpha = dimensionless(v, e); }},
      {"gamma_frequency",
       [](auto v, const auto& e, auto& c) {
         const auto t = trim(v);
         if (t == "pump") {
           c.gamma_frequency = GammaFrequency::pump;
         } else if (t == "degenerate") {
           c.gamma_frequency = GammaFrequency::degenerate;
         } else {
           e.fail("expected 'pump' or 'degenerate'");
         }
       }},
      {"rel_tol",
       [](auto v, const auto& e, auto& c) {
         c.quadrature.rel_tol = dimensionless(v, e);
         require_positive(c.quadrature.rel_tol, e);
       }},
      {"domain_halfwidth_factor",
       [](auto v, const auto& e, auto& c) {
         c.quadrature.domain_halfwidth_factor = dimensionless(v, e);
         if (!(c.quadrature.domain_halfwidth_factor >= 10.0)) e.fail("out of range: must be >= 10");
       }},
      {"max_subdivisions",
       [](auto v, const auto& e, auto& c) {
         c.quadrature.max_subdivisions = integer(v, e);
         if (c.quadrature.max_subdivisions <= 0) e.fail("out of range: must be positive");
       }},
      {"method",
       [](auto v, const auto& e, auto& c) {
         try {
           c.sweep.method = parse_rate_method(trim(v));
         } catch (const ConfigError& ex) {
           e.fail(ex.what());
         }
       }},
      {"points",
       [](auto v, const auto& e, auto& c) {
         const long n = integer(v, e);
         if (n < 2 || n > 10'000'000) e.fail("out of range: need 2 <= points <= 1e7");
         c.sweep.points = static_cast<int>(n);
       }},
      {"delay_min", [](auto v, const auto& e, auto& c) { c.sweep.delay_min = time_fs(v, e); }},
      {"delay_max", [](auto v, const auto& e, auto& c) { c.sweep.delay_max = time_fs(v, e); }},
      {"tau_prime_scale",
       [](auto v, const auto& e, auto& c) {
         c.sweep.tau_prime_scale = per_fs(v, e);
         require_positive(*c.sweep.tau_prime_scale, e);
       }},
      {"delay", [](auto v, const auto& e, auto& c) { c.sweep.delay = time_fs(v, e); }},
      {"gamma_min", [](auto v, const auto& e, auto& c) { c.sweep.gamma_min = dimensionless(v, e); }},
      {"gamma_max", [](auto v, const auto& e, auto& c) { c.sweep.gamma_max = dimensionless(v, e); }},
      {"optimize_tol",
       [](auto v, const auto& e, auto& c) {
         c.sweep.optimize_tol = dimensionless(v, e);
         require_positive(c.sweep.optimize_tol, e);
       }},
      {"spot_checks",
       [](auto v, const auto& e, auto& c) {
         const long n = integer(v, e);
         if (n < 0 || n > 1000) e.fail("out of range: need 0 <= spot_checks <= 1000");
         c.sweep.spot_checks = static_cast<int>(n);
       }},
  };
  return table;
}

}  // namespace

std::optional<PhaseFilter> SimulationConfig::filter() const {
  if (gamma) return PhaseFilter::from_gamma(*gamma, beta);
  if (alpha) {
    const double omega0 = gamma_frequency == GammaFrequency::pump
                              ? optical.pump_angular_frequency
                              : optical.degenerate_angular_frequency();
    return PhaseFilter::from_alpha(*alpha, beta, omega0);
  }
  return std::nullopt;
}

double parse_time(std::string_view text) { return time_fs(text, LineError(0, "time")); }

SimulationConfig parse_config(std::string_view text) {
  SimulationConfig config;
  config.optical = OpticalConfig{};
  std::map<std::string, int, std::less<>> seen;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      std::ostringstream msg;
      msg << "line " << line_no << ": expected 'key = value'";
      throw ConfigError("", msg.str());
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const LineError err(line_no, key);

    const auto it = handlers().find(key);
    if (it == handlers().end()) err.fail("unknown key");
    if (seen.count(key) != 0) err.fail("duplicate key (first set on line " + std::to_string(seen[key]) + ")");
    if (value.empty()) err.fail("missing value");
    seen[key] = line_no;
    it->second(value, err, config);
  }

  for (const char* key : {"inv_group_velocity_diff", "crystal_length", "detector_distance",
                          "degenerate_wavelength"}) {
    if (seen.count(key) == 0) {
      throw ConfigError(key, std::string("missing required key: ") + key);
    }
  }
  auto line_of = [&](const char* key) { return LineError(seen.count(key) ? seen[key] : 0, key); };
  if (config.gamma && config.alpha) {
    line_of("alpha").fail("conflicts with gamma; set only one of alpha and gamma");
  }
  if (config.sweep.delay_min && config.sweep.delay_max &&
      !(*config.sweep.delay_min < *config.sweep.delay_max)) {
    line_of("delay_max").fail("out of range: must exceed delay_min");
  }
  if (!(config.sweep.gamma_min < config.sweep.gamma_max)) {
    line_of("gamma_max").fail("out of range: must exceed gamma_min");
  }

  config.optical.pump_angular_frequency =
      angular_frequency_from_wavelength(0.5 * config.optical.degenerate_wavelength);
  config.optical.validate();
  return config;
}

std::string serialize_config(const SimulationConfig& c) {
  std::ostringstream out;
  auto num = [](double v) { return format_exact(v); };
  out << "inv_group_velocity_diff = " << num(c.optical.inv_group_velocity_diff) << " fs/mm\n";
  out << "crystal_length = " << num(c.optical.crystal_length) << " mm\n";
  out << "detector_distance = " << num(c.optical.detector_distance) << " mm\n";
  out << "degenerate_wavelength = " << num(c.optical.degenerate_wavelength) << " nm\n";
  out << "beta = " << num(c.beta) << " fs\n";
  if (c.gamma) out << "gamma = " << num(*c.gamma) << '\n';
  if (c.alpha) out << "alpha = " << num(*c.alpha) << '\n';
  out << "gamma_frequency = " << (c.gamma_frequency == GammaFrequency::pump ? "pump" : "degenerate")
      << '\n';
  out << "rel_tol = " << num(c.quadrature.rel_tol) << '\n';
  out << "domain_halfwidth_factor = " << num(c.quadrature.domain_halfwidth_factor) << '\n';
  out << "max_subdivisions = " << c.quadrature.max_subdivisions << '\n';
  out << "method = " << to_string(c.sweep.method) << '\n';
  out << "points = " << c.sweep.points << '\n';
  if (c.sweep.delay_min) out << "delay_min = " << num(*c.sweep.delay_min) << " fs\n";
  if (c.sweep.delay_max) out << "delay_max = " << num(*c.sweep.delay_max) << " fs\n";
  if (c.sweep.tau_prime_scale) out << "tau_prime_scale = " << num(*c.sweep.tau_prime_scale) << " 1/fs\n";
  out << "delay = " << num(c.sweep.delay) << " fs\n";
  out << "gamma_min = " << num(c.sweep.gamma_min) << '\n';
  out << "gamma_max = " << num(c.sweep.gamma_max) << '\n';
  out << "optimize_tol = " << num(c.sweep.optimize_tol) << '\n';
  out << "spot_checks = " << c.sweep.spot_checks << '\n';
  return out.str();
}

}  // namespace spdc

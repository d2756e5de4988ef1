#include "spdc/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spdc/format.hpp"

namespace spdc {

namespace {

constexpr std::string_view kConfigPrefix = "cfg.";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, int line) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("csv line " + std::to_string(line) + ": bad number '" +
                                std::string(text) + "'");
  }
  return value;
}

void write_metadata(const Metadata& metadata, std::ostream& out) {
  for (const auto& [key, value] : metadata) out << "# " << key << " = " << value << '\n';
}

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ostringstream buffer;
  writer(buffer);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  file << buffer.str();
  file.flush();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
}

std::string svg_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v == 0.0 ? 0.0 : v);
  std::string s = buf;
  if (s == "-0.000" || s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

}  // namespace

void write_curve_csv(const Curve& curve, std::ostream& out) {
  curve.validate();
  std::ostringstream buffer;
  buffer << "# x=" << curve.x_label << ", y=" << curve.y_label << '\n';
  write_metadata(curve.metadata, buffer);
  for (const auto& s : curve.samples) {
    buffer << format_g(s.x, kCsvDigits) << ',' << format_g(s.y, kCsvDigits) << '\n';
  }
  out << buffer.str();
}

void write_curve_csv(const Curve& curve, const std::filesystem::path& path) {
  curve.validate();
  write_file(path, [&](std::ostream& out) { write_curve_csv(curve, out); });
}

Curve read_curve_csv(std::string_view text) {
  Curve curve;
  int line_no = 0;
  bool header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() : nl + 1;
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;

    if (line.substr(0, 2) == "# ") {
      const std::string_view body = line.substr(2);
      if (!header && body.substr(0, 2) == "x=") {
        const auto comma = body.find(", y=");
        if (comma == std::string_view::npos) throw std::invalid_argument("csv: malformed header");
        curve.x_label = std::string(body.substr(2, comma - 2));
        curve.y_label = std::string(body.substr(comma + 4));
        header = true;
        continue;
      }
      const auto eq = body.find(" = ");
      if (eq != std::string_view::npos) {
        curve.metadata.emplace_back(std::string(body.substr(0, eq)), std::string(body.substr(eq + 3)));
      }
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument("csv line " + std::to_string(line_no) + ": expected x,y");
    }
    curve.samples.push_back(
        {parse_double(line.substr(0, comma), line_no), parse_double(line.substr(comma + 1), line_no)});
  }
  if (!header) throw std::invalid_argument("csv: missing '# x=..., y=...' header");
  return curve;
}

std::string config_text_from_metadata(const Curve& curve) {
  std::string text;
  for (const auto& [key, value] : curve.metadata) {
    if (key.rfind(kConfigPrefix, 0) == 0) {
      text += key.substr(kConfigPrefix.size()) + " = " + value + "\n";
    }
  }
  return text;
}

void write_curve_svg(const Curve& curve, std::ostream& out) {
  curve.validate();
  if (curve.samples.empty()) throw std::invalid_argument("cannot plot an empty curve");

  constexpr double kWidth = 640.0;
  constexpr double kHeight = 420.0;
  constexpr double kLeft = 70.0;
  constexpr double kRight = 20.0;
  constexpr double kTop = 36.0;
  constexpr double kBottom = 56.0;
  constexpr int kTicks = 5;

  const double x_min = curve.samples.front().x;
  double x_max = curve.samples.back().x;
  if (x_max == x_min) x_max = x_min + 1.0;
  double y_min = 0.0;
  double y_max = 0.0;
  for (const auto& s : curve.samples) {
    y_min = std::min(y_min, s.y);
    y_max = std::max(y_max, s.y);
  }
  y_max = y_max > y_min ? y_max * 1.05 : y_min + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };

  std::string title = curve.y_label + " vs " + curve.x_label;
  for (const auto& [key, value] : curve.metadata) {
    if (key == "gamma") title += " (gamma = " + value + ")";
  }

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fixed(kWidth / 2, 1) << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << svg_escape(title) << "</text>\n";
  svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  svg << "<rect x=\"" << fixed(kLeft, 1) << "\" y=\"" << fixed(kTop, 1) << "\" width=\""
      << fixed(plot_w, 1) << "\" height=\"" << fixed(plot_h, 1) << "\"/>\n";
  svg << "</g>\n";

  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int i = 0; i < kTicks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / (kTicks - 1);
    const double fy = y_min + (y_max - y_min) * i / (kTicks - 1);
    svg << "<text x=\"" << fixed(px(fx), 2) << "\" y=\"" << fixed(kTop + plot_h + 16, 2)
        << "\" text-anchor=\"middle\">" << format_g(fx, 4) << "</text>\n";
    svg << "<text x=\"" << fixed(kLeft - 6, 2) << "\" y=\"" << fixed(py(fy) + 4, 2)
        << "\" text-anchor=\"end\">" << format_g(fy, 4) << "</text>\n";
  }
  svg << "<text x=\"" << fixed(kLeft + plot_w / 2, 2) << "\" y=\"" << fixed(kHeight - 14, 2)
      << "\" text-anchor=\"middle\">" << svg_escape(curve.x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << fixed(kTop + plot_h / 2, 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << fixed(kTop + plot_h / 2, 2)
      << ")\">" << svg_escape(curve.y_label) << "</text>\n";
  svg << "</g>\n";

  svg << "<polyline fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    if (i > 0) svg << ' ';
    svg << fixed(px(curve.samples[i].x), 3) << ',' << fixed(py(curve.samples[i].y), 3);
  }
  svg << "\"/>\n";
  svg << "</svg>\n";
  out << svg.str();
}

void write_curve_svg(const Curve& curve, const std::filesystem::path& path) {
  curve.validate();
  write_file(path, [&](std::ostream& out) { write_curve_svg(curve, out); });
}

void write_optimization_csv(const OptimizationResult& result, const Metadata& metadata,
                            std::ostream& out) {
  std::ostringstream buffer;
  buffer << "# result=optimize_gamma\n";
  write_metadata(metadata, buffer);
  buffer << "gamma_star,rate_star,iterations,bracket_lo,bracket_hi\n";
  buffer << format_g(result.gamma_star, kCsvDigits) << ',' << format_g(result.rate_star, kCsvDigits)
         << ',' << result.iterations << ',' << format_g(result.bracket_lo, kCsvDigits) << ','
         << format_g(result.bracket_hi, kCsvDigits) << '\n';
  out << buffer.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  if (file.bad()) throw IoError("failed reading '" + path.string() + "'");
  return buffer.str();
}

}  // namespace spdc

#include "lgsim/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace lgsim::cli {

namespace {

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  return std::get<std::string>(c);
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string format_real(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("format_real: non-finite value");
  std::string s = fmt("%.9f", x);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string emit_csv(const Table& table) {
  if (table.rows.empty()) throw std::invalid_argument("emit_csv: no rows");
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw std::invalid_argument("emit_csv: ragged row");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += cell_text(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string emit_json(const nlohmann::ordered_json& config, const Table& table) {
  if (table.rows.empty()) throw std::invalid_argument("emit_json: no rows");
  nlohmann::ordered_json doc;
  doc["config"] = config;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw std::invalid_argument("emit_json: ragged row");
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (const auto* d = std::get_if<double>(&row[c])) {
        // Round-trip through the CSV text so both formats agree digit for digit.
        obj[table.columns[c]] = std::strtod(format_real(*d).c_str(), nullptr);
      } else {
        obj[table.columns[c]] = std::get<std::string>(row[c]);
      }
    }
    doc["rows"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

std::string emit_svg(const Plot& plot) {
  if (plot.series.empty()) throw std::invalid_argument("emit_svg: no series");
  if (!(plot.x_max > plot.x_min) || !(plot.y_max > plot.y_min)) {
    throw std::invalid_argument("emit_svg: empty plot range");
  }
  constexpr double kWidth = 800, kHeight = 500;
  constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 60;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + (x - plot.x_min) / (plot.x_max - plot.x_min) * pw; };
  const auto sy = [&](double y) { return kTop + (plot.y_max - y) / (plot.y_max - plot.y_min) * ph; };
  const auto c = [](double v) { return fmt("%.3f", v); };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
    << "<text x=\"" << c(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
    << "font-size=\"16\">" << escape_xml(plot.title) << "</text>\n";

  for (const auto& [lo, hi] : plot.shaded) {
    o << "<rect class=\"violation\" x=\"" << c(sx(lo)) << "\" y=\"" << c(kTop) << "\" width=\""
      << c(sx(hi) - sx(lo)) << "\" height=\"" << c(ph) << "\" fill=\"#f4c7c3\" fill-opacity=\"0.7\"/>\n";
  }

  // Axes and ticks.
  o << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
    << "<rect x=\"" << c(kLeft) << "\" y=\"" << c(kTop) << "\" width=\"" << c(pw) << "\" height=\"" << c(ph)
    << "\"/>\n";
  constexpr int kTicks = 5;
  for (int t = 0; t < kTicks; ++t) {
    const double fx = plot.x_min + (plot.x_max - plot.x_min) * t / (kTicks - 1);
    const double fy = plot.y_min + (plot.y_max - plot.y_min) * t / (kTicks - 1);
    o << "<line x1=\"" << c(sx(fx)) << "\" y1=\"" << c(kTop + ph) << "\" x2=\"" << c(sx(fx)) << "\" y2=\""
      << c(kTop + ph + 5) << "\"/>\n"
      << "<line x1=\"" << c(kLeft - 5) << "\" y1=\"" << c(sy(fy)) << "\" x2=\"" << c(kLeft) << "\" y2=\""
      << c(sy(fy)) << "\"/>\n";
  }
  o << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int t = 0; t < kTicks; ++t) {
    const double fx = plot.x_min + (plot.x_max - plot.x_min) * t / (kTicks - 1);
    const double fy = plot.y_min + (plot.y_max - plot.y_min) * t / (kTicks - 1);
    o << "<text x=\"" << c(sx(fx)) << "\" y=\"" << c(kTop + ph + 20) << "\" text-anchor=\"middle\">"
      << fmt("%.3g", fx) << "</text>\n"
      << "<text x=\"" << c(kLeft - 8) << "\" y=\"" << c(sy(fy) + 4) << "\" text-anchor=\"end\">"
      << fmt("%.3g", fy) << "</text>\n";
  }
  o << "<text x=\"" << c(kLeft + pw / 2) << "\" y=\"" << c(kHeight - 15) << "\" text-anchor=\"middle\">"
    << escape_xml(plot.x_label) << "</text>\n"
    << "<text x=\"18\" y=\"" << c(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << c(kTop + ph / 2) << ")\">" << escape_xml(plot.y_label) << "</text>\n</g>\n";

  if (plot.bound) {
    o << "<line class=\"bound\" x1=\"" << c(kLeft) << "\" y1=\"" << c(sy(*plot.bound)) << "\" x2=\""
      << c(kLeft + pw) << "\" y2=\"" << c(sy(*plot.bound))
      << "\" stroke=\"#555555\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
  }

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    if (s.x.size() != s.y.size()) throw std::invalid_argument("emit_svg: series length mismatch");
    o << "<polyline class=\"series\" fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) o << ' ';
      o << c(sx(s.x[i])) << ',' << c(sy(s.y[i]));
    }
    o << "\"/>\n";
    const double ly = kTop + 20 + 22 * static_cast<double>(k);
    o << "<line x1=\"" << c(kLeft + pw + 15) << "\" y1=\"" << c(ly) << "\" x2=\"" << c(kLeft + pw + 40)
      << "\" y2=\"" << c(ly) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n"
      << "<text x=\"" << c(kLeft + pw + 46) << "\" y=\"" << c(ly + 4)
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(s.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace lgsim::cli

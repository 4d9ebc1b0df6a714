#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lgsim::cli {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Fixed notation with 9 digits after the point; negative zero prints as zero.
std::string format_real(double x);

/// Header row plus one line per row, LF endings, no trailing delimiter.
std::string emit_csv(const Table& table);

/// {"config": config, "rows": [{column: value, ...}, ...]}. Reals carry the
/// same 9-decimal precision as the CSV.
std::string emit_json(const nlohmann::ordered_json& config, const Table& table);

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  double x_min = 0, x_max = 1;
  double y_min = 0, y_max = 1;
  std::vector<Series> series;
  std::vector<std::pair<double, double>> shaded;  // x intervals
  std::optional<double> bound;                    // horizontal reference line
};

/// Self-contained SVG document: no scripts, stylesheets or external refs.
std::string emit_svg(const Plot& plot);

}  // namespace lgsim::cli

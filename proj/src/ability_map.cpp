#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "strucbench/report.hpp"

namespace strucbench {

namespace {

constexpr double kCenter = 250.0;
constexpr double kRadius = 200.0;
constexpr double kPi = 3.14159265358979323846;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

// Point at `score` (0..10) on axis k; axis 0 points straight up.
std::pair<double, double> point(std::size_t k, double score) {
  const double angle = (-90.0 + 60.0 * static_cast<double>(k)) * kPi / 180.0;
  const double r = kRadius * score / 10.0;
  return {kCenter + r * std::cos(angle), kCenter + r * std::sin(angle)};
}

std::string escape_xml(std::string_view text) {
  std::string out;
  for (const char c : text) {
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

std::string polygon_points(const std::array<double, 6>& scores) {
  std::string out;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    const auto [x, y] = point(k, scores[k]);
    if (k > 0) out += ' ';
    out += coord(x) + "," + coord(y);
  }
  return out;
}

}  // namespace

std::string emit_ability_map(std::span<const AbilityAnnotation> annotations) {
  if (annotations.empty()) throw std::invalid_argument("ability map needs at least one model");
  for (const AbilityAnnotation& a : annotations) validate(a);

  std::ostringstream svg;
  // 80px side margins keep the long axis labels inside the canvas.
  const std::size_t height = 520 + 20 * annotations.size();
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"660\" height=\"" << height
      << "\" viewBox=\"-80 0 660 " << height << "\">\n";
  svg << "<g class=\"grid\" fill=\"none\" stroke=\"#cccccc\">\n";
  for (int ring = 2; ring <= 10; ring += 2) {
    std::array<double, 6> level;
    level.fill(static_cast<double>(ring));
    svg << "<polygon points=\"" << polygon_points(level) << "\"/>\n";
  }
  svg << "</g>\n<g class=\"axes\" stroke=\"#888888\">\n";
  for (std::size_t k = 0; k < kAbilityAxes.size(); ++k) {
    const auto [x, y] = point(k, 10.0);
    svg << "<line x1=\"" << coord(kCenter) << "\" y1=\"" << coord(kCenter) << "\" x2=\""
        << coord(x) << "\" y2=\"" << coord(y) << "\"/>\n";
  }
  svg << "</g>\n<g class=\"labels\" font-family=\"sans-serif\" font-size=\"12\" "
         "text-anchor=\"middle\">\n";
  for (std::size_t k = 0; k < kAbilityAxes.size(); ++k) {
    const auto [x, y] = point(k, 11.2);
    svg << "<text x=\"" << coord(x) << "\" y=\"" << coord(y) << "\">" << kAbilityAxes[k]
        << "</text>\n";
  }
  svg << "</g>\n";
  for (std::size_t m = 0; m < annotations.size(); ++m) {
    const char* color = kPalette[m % std::size(kPalette)];
    svg << "<polygon class=\"model\" data-model=\"" << escape_xml(annotations[m].model_name)
        << "\" points=\"" << polygon_points(annotations[m].scores) << "\" fill=\"" << color
        << "\" fill-opacity=\"0.2\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
  }
  svg << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t m = 0; m < annotations.size(); ++m) {
    const double y = 510.0 + 20.0 * static_cast<double>(m);
    svg << "<rect x=\"20\" y=\"" << coord(y - 10.0) << "\" width=\"12\" height=\"12\" fill=\""
        << kPalette[m % std::size(kPalette)] << "\"/>\n";
    svg << "<text x=\"40\" y=\"" << coord(y) << "\">" << escape_xml(annotations[m].model_name)
        << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace strucbench

#pragma once

/**
 * @file svg.hpp
 * @brief Minimal SVG 1.1 line plot: fixed 800x600 viewport, linear axes,
 *        one polyline per sample column on a shared y range.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "flatblend/io/format.hpp"
#include "flatblend/io/json.hpp"

namespace flatblend::io {

inline constexpr int kSvgWidth = 800;
inline constexpr int kSvgHeight = 600;
inline constexpr int kSvgMargin = 60;

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

// Fixed two-decimal pixel coordinates keep files small and stable.
inline std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

inline void write_svg(std::ostream& out, const SampleTable& t) {
  static constexpr std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#2ca02c",
                                                      "#9467bd", "#ff7f0e", "#8c564b"};
  const double x0 = t.x.front(), x1 = t.x.back();
  double y0 = 0.0, y1 = 0.0;
  bool first = true;
  for (const auto& col : t.columns) {
    for (double v : col) {
      if (!std::isfinite(v)) continue;
      y0 = first ? v : std::min(y0, v);
      y1 = first ? v : std::max(y1, v);
      first = false;
    }
  }
  if (y1 - y0 < 1e-12) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double w = kSvgWidth - 2.0 * kSvgMargin, h = kSvgHeight - 2.0 * kSvgMargin;
  auto sx = [&](double x) { return kSvgMargin + (x - x0) / (x1 - x0) * w; };
  auto sy = [&](double y) { return kSvgHeight - kSvgMargin - (y - y0) / (y1 - y0) * h; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSvgWidth
      << "\" height=\"" << kSvgHeight << "\" viewBox=\"0 0 " << kSvgWidth << ' ' << kSvgHeight
      << "\">\n"
      << "<title>" << detail::xml_escape(t.label) << "</title>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const std::string left = detail::px(kSvgMargin), right = detail::px(kSvgWidth - kSvgMargin);
  const std::string top = detail::px(kSvgMargin), bottom = detail::px(kSvgHeight - kSvgMargin);
  out << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
      << bottom << "\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << left << "\" y2=\"" << top
      << "\"/>\n"
      << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<text x=\"" << left << "\" y=\"" << detail::px(kSvgHeight - kSvgMargin + 18)
      << "\" text-anchor=\"middle\">" << format_double(x0) << "</text>\n"
      << "<text x=\"" << right << "\" y=\"" << detail::px(kSvgHeight - kSvgMargin + 18)
      << "\" text-anchor=\"middle\">" << format_double(x1) << "</text>\n"
      << "<text x=\"" << detail::px(kSvgMargin - 6) << "\" y=\"" << bottom
      << "\" text-anchor=\"end\">" << format_double(y0) << "</text>\n"
      << "<text x=\"" << detail::px(kSvgMargin - 6) << "\" y=\"" << top
      << "\" text-anchor=\"end\">" << format_double(y1) << "</text>\n"
      << "</g>\n";
  for (std::size_t k = 0; k < t.columns.size(); ++k) {
    out << "<polyline fill=\"none\" stroke=\"" << kColors[k % kColors.size()]
        << "\" stroke-width=\"1.5\" data-series=\"" << column_name(k) << "\" points=\"";
    for (std::size_t i = 0; i < t.x.size(); ++i) {
      const double v = t.columns[k][i];
      if (!std::isfinite(v)) continue;
      if (i > 0) out << ' ';
      out << detail::px(sx(t.x[i])) << ',' << detail::px(sy(v));
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace flatblend::io

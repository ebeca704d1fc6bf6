#pragma once

/**
 * @file csv.hpp
 * @brief CSV output of sample tables and input of sampled data.
 *
 * Output rows are `x,value[,d1..dk]`. Input accepts one column (values on a
 * uniform grid over a caller-supplied interval) or two columns (x, value
 * with uniform x), each with an optional header row.
 */

#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatblend/io/format.hpp"
#include "flatblend/types.hpp"

namespace flatblend::io {

inline std::string csv_header(std::size_t derivs) {
  std::string h = "x,value";
  for (std::size_t k = 1; k <= derivs; ++k) h += ",d" + std::to_string(k);
  return h;
}

inline void write_csv_row(std::ostream& out, double x, const std::vector<double>& values) {
  out << format_double(x);
  for (double v : values) out << ',' << format_double(v);
  out << '\n';
}

inline void write_csv(std::ostream& out, const SampleTable& t, bool header = true) {
  if (header) out << csv_header(t.derivs()) << '\n';
  std::vector<double> row(t.columns.size());
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    for (std::size_t k = 0; k < t.columns.size(); ++k) row[k] = t.columns[k][i];
    write_csv_row(out, t.x[i], row);
  }
}

/// Parsed sampled data: uniform-grid values and the interval they span.
struct SampledData {
  std::vector<double> values;
  std::optional<Interval> interval;  // present for two-column input
};

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

inline bool blank(const std::string& s) {
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace detail

/// Relative tolerance for the uniform-spacing check of two-column input.
inline constexpr double kGridSpacingTolerance = 1e-9;

inline SampledData read_sampled_csv(std::istream& in, const std::string& source = "input") {
  SampledData d;
  std::vector<double> xs;
  std::string line;
  std::size_t width = 0, line_no = 0;
  bool first_data = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::blank(line)) continue;
    const auto fields = detail::split_fields(line);
    if (fields.empty() || fields.size() > 2) {
      throw std::invalid_argument(source + ":" + std::to_string(line_no) +
                                  ": expected one or two columns");
    }
    std::vector<double> nums;
    try {
      for (const auto& f : fields) nums.push_back(parse_double(f));
    } catch (const std::invalid_argument&) {
      if (first_data && d.values.empty()) {  // header row
        first_data = false;
        continue;
      }
      throw std::invalid_argument(source + ":" + std::to_string(line_no) + ": bad number");
    }
    first_data = false;
    if (width == 0) width = nums.size();
    if (nums.size() != width) {
      throw std::invalid_argument(source + ":" + std::to_string(line_no) +
                                  ": inconsistent column count");
    }
    if (width == 2) xs.push_back(nums[0]);
    d.values.push_back(nums.back());
  }
  if (d.values.size() < 2) throw std::invalid_argument(source + ": need at least 2 samples");
  if (width == 2) {
    d.interval = Interval(xs.front(), xs.back());
    const double dx = d.interval->length() / static_cast<double>(xs.size() - 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (std::abs(xs[i] - d.interval->grid_point(i, xs.size())) >
          kGridSpacingTolerance * std::max(1.0, dx * static_cast<double>(xs.size()))) {
        throw std::invalid_argument(source + ": x column is not uniformly spaced");
      }
    }
  }
  return d;
}

inline SampledData read_sampled_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_sampled_csv(in, path);
}

}  // namespace flatblend::io

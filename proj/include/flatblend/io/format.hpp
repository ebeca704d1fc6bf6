#pragma once

/**
 * @file format.hpp
 * @brief Deterministic number formatting and uniform sampling of handles.
 */

#include <charconv>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "flatblend/jet.hpp"
#include "flatblend/types.hpp"

namespace flatblend::io {

/// Shortest decimal that round-trips to the same double (at most 17 digits).
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

/// Parses a full string as a double; throws std::invalid_argument otherwise.
inline double parse_double(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
  if (first < last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

/// Values and derivative columns on a uniform grid. columns[k][i] = f^(k)(x[i]).
struct SampleTable {
  std::string label;
  std::vector<double> x;
  std::vector<std::vector<double>> columns;

  std::size_t derivs() const { return columns.empty() ? 0 : columns.size() - 1; }
};

using JetEvaluator = std::function<Jet(double x, std::size_t order)>;

/// n >= 2 uniformly spaced points of `range` (endpoints exact), derivatives 0..derivs.
inline SampleTable sample(const JetEvaluator& f, const Interval& range, std::size_t n,
                          std::size_t derivs, std::string label) {
  if (n < 2) throw std::invalid_argument("sample: need at least 2 points");
  SampleTable t;
  t.label = std::move(label);
  t.columns.assign(derivs + 1, {});
  for (std::size_t i = 0; i < n; ++i) {
    const double x = range.grid_point(i, n);
    const Jet j = f(x, derivs);
    t.x.push_back(x);
    for (std::size_t k = 0; k <= derivs; ++k) t.columns[k].push_back(j.derivative(k));
  }
  return t;
}

}  // namespace flatblend::io

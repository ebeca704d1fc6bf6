#pragma once

/**
 * @file catalog.hpp
 * @brief Ready-made SmoothFunction handles: elementary branch functions,
 *        the named step families, and a sampled-data adapter.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatblend/fabius.hpp"
#include "flatblend/jet.hpp"
#include "flatblend/numerics/finite_difference.hpp"
#include "flatblend/smooth_function.hpp"
#include "flatblend/step_functions.hpp"
#include "flatblend/types.hpp"

namespace flatblend::catalog {

inline const StepOrders kNoFlatness{0, 0};

inline SmoothFunction constant(Interval domain, double c) { return constant_function(domain, c); }

/// sum_i c[i] x^i (ascending coefficients).
inline SmoothFunction polynomial(Interval domain, std::vector<double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("polynomial: no coefficients");
  return SmoothFunction(
      domain,
      [coeffs](double x, std::size_t k) {
        const Jet X = Jet::variable(x, k);
        Jet acc = Jet::constant(coeffs.back(), k, x);
        for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * X + coeffs[i];
        return acc;
      },
      kNoFlatness, "poly[" + std::to_string(coeffs.size() - 1) + "]");
}

/// amplitude * sin(frequency x + phase).
inline SmoothFunction sine(Interval domain, double frequency, double amplitude = 1.0,
                           double phase = 0.0) {
  return SmoothFunction::from_expression(
      domain, [=](const Jet& x) { return amplitude * sin(frequency * x + phase); }, kNoFlatness,
      "sin(" + std::to_string(frequency) + "x)");
}

/// amplitude * cos(frequency x + phase).
inline SmoothFunction cosine(Interval domain, double frequency, double amplitude = 1.0,
                             double phase = 0.0) {
  return SmoothFunction::from_expression(
      domain, [=](const Jet& x) { return amplitude * cos(frequency * x + phase); }, kNoFlatness,
      "cos(" + std::to_string(frequency) + "x)");
}

/// amplitude * exp(rate x).
inline SmoothFunction exponential(Interval domain, double rate, double amplitude = 1.0) {
  return SmoothFunction::from_expression(
      domain, [=](const Jet& x) { return amplitude * exp(rate * x); }, kNoFlatness,
      "exp(" + std::to_string(rate) + "x)");
}

/// f(x) = 2 + (5 - x) cos^2(3 pi (5 - x)), the standard blending example.
inline SmoothFunction blend_example(Interval domain) {
  return SmoothFunction::from_expression(
      domain,
      [](const Jet& x) {
        const Jet u = 5.0 - x;
        const Jet c = cos(3.0 * std::numbers::pi * u);
        return 2.0 + u * c * c;
      },
      kNoFlatness, "2+(5-x)cos^2(3pi(5-x))");
}

/// Nodes used for the local polynomial fit of sampled data.
inline constexpr std::size_t kSampleWindow = 8;

/**
 * Uniformly sampled data on `domain` as a SmoothFunction. Values and
 * derivatives at x come from the degree-7 polynomial through the
 * kSampleWindow samples nearest x (Fornberg weights), so value(x) equals
 * the sample at every node. Jet entries above order 7 are zero.
 */
inline SmoothFunction sampled(Interval domain, std::vector<double> samples,
                              std::string label = "sampled") {
  if (samples.size() < kSampleWindow) {
    throw std::invalid_argument("sampled: need at least " + std::to_string(kSampleWindow) +
                                " samples, got " + std::to_string(samples.size()));
  }
  for (double v : samples) {
    if (!std::isfinite(v)) throw std::invalid_argument("sampled: non-finite sample");
  }
  const double dx = domain.length() / static_cast<double>(samples.size() - 1);
  const double a = domain.a();
  return SmoothFunction(
      domain,
      [samples, dx, a](double x, std::size_t k) {
        const double u = (x - a) / dx;  // grid units
        const std::size_t n = samples.size();
        const auto cell = static_cast<std::ptrdiff_t>(std::floor(u));
        std::ptrdiff_t first = cell - static_cast<std::ptrdiff_t>(kSampleWindow / 2 - 1);
        first = std::clamp<std::ptrdiff_t>(first, 0,
                                           static_cast<std::ptrdiff_t>(n - kSampleWindow));
        std::vector<double> nodes(kSampleWindow);
        for (std::size_t i = 0; i < kSampleWindow; ++i) {
          nodes[i] = static_cast<double>(first + static_cast<std::ptrdiff_t>(i));
        }
        const std::size_t top = std::min(k, kSampleWindow - 1);
        const auto w = numerics::fornberg_weights(u, nodes, top);
        std::vector<double> d(k + 1, 0.0);
        for (std::size_t m = 0; m <= top; ++m) {
          double s = 0.0;
          for (std::size_t i = 0; i < kSampleWindow; ++i) {
            s += w[m][i] * samples[static_cast<std::size_t>(first) + i];
          }
          d[m] = s / std::pow(dx, static_cast<double>(m));
        }
        return Jet::from_derivatives(d, x);
      },
      kNoFlatness, std::move(label));
}

enum class Family { beta, rational, expo, trig, fabius };

inline Family parse_family(const std::string& name) {
  if (name == "beta") return Family::beta;
  if (name == "rational") return Family::rational;
  if (name == "expo" || name == "expo-rational") return Family::expo;
  if (name == "trig") return Family::trig;
  if (name == "fabius") return Family::fabius;
  throw std::invalid_argument("unknown family '" + name +
                              "' (expected beta, rational, expo, trig, fabius)");
}

inline std::string family_name(Family f) {
  switch (f) {
    case Family::beta: return "beta";
    case Family::rational: return "rational";
    case Family::expo: return "expo";
    case Family::trig: return "trig";
    default: return "fabius";
  }
}

/// Parameters selecting one member of a step family.
struct StepParams {
  Family family = Family::beta;
  std::size_t left = 1;   // beta, rational
  std::size_t right = 1;  // beta, rational
  unsigned m = 1;         // trig
  FabiusOptions fabius;   // fabius
};

inline SmoothFunction make_step(const StepParams& p) {
  switch (p.family) {
    case Family::beta: return beta_step(p.left, p.right);
    case Family::rational: return rational_step(p.left, p.right);
    case Family::expo: return expo_rational_step();
    case Family::trig: return trig_step(p.m);
    default: return fabius(solve_fabius(p.fabius));
  }
}

}  // namespace flatblend::catalog

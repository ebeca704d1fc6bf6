#pragma once

/**
 * @file quadrature.hpp
 * @brief Composite Gauss-Legendre quadrature.
 *
 * Nodes and weights for 2..64 points are computed once by Newton iteration
 * on the Legendre three-term recurrence. The default rule (32 panels of 16
 * nodes) is what every oracle integral in this project uses.
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatblend/types.hpp"

namespace flatblend::numerics {

struct QuadratureRule {
  std::size_t panels = 32;
  std::size_t nodes_per_panel = 16;

  void validate() const {
    if (panels < 1) throw std::invalid_argument("QuadratureRule: panels must be >= 1");
    if (nodes_per_panel < 2 || nodes_per_panel > 64) {
      throw std::invalid_argument("QuadratureRule: nodes_per_panel must lie in [2, 64]");
    }
  }
};

struct GaussLegendreNodes {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

namespace detail {

inline GaussLegendreNodes compute_gauss_legendre(std::size_t n) {
  GaussLegendreNodes r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[n - 1 - i] = x;
    r.nodes[i] = -x;
    r.weights[n - 1 - i] = w;
    r.weights[i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

}  // namespace detail

/// Cached n-point rule on [-1, 1], 2 <= n <= 64.
inline const GaussLegendreNodes& gauss_legendre(std::size_t n) {
  static const std::array<GaussLegendreNodes, 65> table = [] {
    std::array<GaussLegendreNodes, 65> t{};
    for (std::size_t k = 2; k <= 64; ++k) t[k] = detail::compute_gauss_legendre(k);
    return t;
  }();
  if (n < 2 || n > 64) throw std::invalid_argument("gauss_legendre: n must lie in [2, 64]");
  return table[n];
}

/// Composite Gauss-Legendre estimate of the integral of f over [a, b].
template <class F>
double integrate(F&& f, Interval interval, const QuadratureRule& rule = {}) {
  rule.validate();
  const auto& gl = gauss_legendre(rule.nodes_per_panel);
  const double h = interval.length() / static_cast<double>(rule.panels);
  double total = 0.0;
  for (std::size_t p = 0; p < rule.panels; ++p) {
    const double lo = interval.a() + h * static_cast<double>(p);
    const double mid = lo + 0.5 * h;
    double panel = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double y = f(mid + 0.5 * h * gl.nodes[i]);
      if (!std::isfinite(y)) {
        throw std::domain_error("integrate: non-finite integrand sample at x = " +
                                std::to_string(mid + 0.5 * h * gl.nodes[i]));
      }
      panel += gl.weights[i] * y;
    }
    total += 0.5 * h * panel;
  }
  return total;
}

}  // namespace flatblend::numerics

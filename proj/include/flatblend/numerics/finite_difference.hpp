#pragma once

/**
 * @file finite_difference.hpp
 * @brief Finite-difference derivative estimates used as independent oracles
 *        for flatness, seam, and blend checks.
 *
 * Stencil weights come from Fornberg's recursion, so arbitrary node sets
 * work (central, one-sided, or sampled grids). The step for derivative k is
 * h_k = scale * eps^(1/(k+2)). Stencils are wider than the minimal ones
 * (kCentralExtra extra node pairs centrally, k + kOneSidedAccuracy nodes
 * one-sided), so truncation error stays below round-off at scale ~ 1 for
 * functions varying on unit length scales. Pick scale ~ 1/frequency otherwise.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatblend/types.hpp"

namespace flatblend::numerics {

enum class Stencil { central, forward, backward };

/// Highest derivative order the estimators accept.
inline constexpr std::size_t kMaxFdOrder = 6;

/**
 * Fornberg weights: w[m][j] approximates the m-th derivative at x0 as
 * sum_j w[m][j] f(nodes[j]), for m = 0..max_order.
 */
inline std::vector<std::vector<double>> fornberg_weights(double x0,
                                                         std::span<const double> nodes,
                                                         std::size_t max_order) {
  const std::size_t n = nodes.size();
  if (n == 0) throw std::invalid_argument("fornberg_weights: no nodes");
  std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

/// Step used for derivative order k.
inline double fd_step(std::size_t k, double scale) {
  return scale * std::pow(std::numeric_limits<double>::epsilon(),
                          1.0 / static_cast<double>(k + 2));
}

/// Extra points beyond k used by one-sided stencils (accuracy order).
inline constexpr std::size_t kOneSidedAccuracy = 4;

/// Extra node pairs beyond the minimal central stencil.
inline constexpr int kCentralExtra = 2;

/// Node offsets (in units of h) for derivative k under a stencil kind.
inline std::vector<double> stencil_offsets(std::size_t k, Stencil kind) {
  std::vector<double> off;
  if (kind == Stencil::central) {
    const int p = static_cast<int>((k + 1) / 2) + kCentralExtra;
    for (int i = -p; i <= p; ++i) off.push_back(i);
  } else {
    const std::size_t n = k + kOneSidedAccuracy;
    for (std::size_t i = 0; i < n; ++i) {
      off.push_back(kind == Stencil::forward ? static_cast<double>(i)
                                             : -static_cast<double>(i));
    }
  }
  return off;
}

/// Estimate of f^(k)(x) with an explicit stencil kind.
template <class F>
double fd_derivative(F&& f, double x, std::size_t k, double scale, Stencil kind) {
  if (k == 0) return f(x);
  if (k > kMaxFdOrder) {
    throw std::invalid_argument("fd_derivative: order " + std::to_string(k) +
                                " exceeds " + std::to_string(kMaxFdOrder));
  }
  const double h = fd_step(k, scale);
  const auto off = stencil_offsets(k, kind);
  std::vector<double> nodes(off.size());
  for (std::size_t i = 0; i < off.size(); ++i) nodes[i] = off[i];
  const auto w = fornberg_weights(0.0, nodes, k);
  double s = 0.0;
  for (std::size_t i = 0; i < off.size(); ++i) {
    if (w[k][i] != 0.0) s += w[k][i] * f(x + off[i] * h);
  }
  return s / std::pow(h, static_cast<double>(k));
}

/// Stencil extent (in units of h) on the left and right of x.
inline std::pair<double, double> stencil_extent(std::size_t k, Stencil kind) {
  const auto off = stencil_offsets(k, kind);
  const auto [lo, hi] = std::minmax_element(off.begin(), off.end());
  return {-*lo, *hi};
}

/// Central when the stencil fits in the domain, else one-sided toward the interior.
inline Stencil choose_stencil(double x, std::size_t k, double scale, const Interval& domain) {
  const double h = fd_step(k, scale);
  const auto [left, right] = stencil_extent(k, Stencil::central);
  if (x - left * h >= domain.a() && x + right * h <= domain.b()) return Stencil::central;
  const double reach = stencil_extent(k, Stencil::forward).second * h;
  if (x + reach <= domain.b() && x >= domain.a()) return Stencil::forward;
  if (x - reach >= domain.a() && x <= domain.b()) return Stencil::backward;
  throw std::out_of_range("finite_difference_jet: stencil for order " + std::to_string(k) +
                          " does not fit the domain at x = " + std::to_string(x));
}

/**
 * Raw derivative estimates f(x), f'(x), ..., f^(order)(x). Uses central
 * differences in the interior and one-sided stencils near the domain ends.
 */
template <class F>
std::vector<double> finite_difference_jet(F&& f, double x, std::size_t order, double scale,
                                          const Interval& domain) {
  if (order > kMaxFdOrder) {
    throw std::invalid_argument("finite_difference_jet: order must be <= 6");
  }
  if (!(scale > 0.0)) throw std::invalid_argument("finite_difference_jet: scale must be > 0");
  std::vector<double> d(order + 1);
  d[0] = f(x);
  for (std::size_t k = 1; k <= order; ++k) {
    d[k] = fd_derivative(f, x, k, scale, choose_stencil(x, k, scale, domain));
  }
  return d;
}

/// Explicit-stencil variant (all orders share the stencil kind).
template <class F>
std::vector<double> finite_difference_jet(F&& f, double x, std::size_t order, double scale,
                                          Stencil kind) {
  if (order > kMaxFdOrder) {
    throw std::invalid_argument("finite_difference_jet: order must be <= 6");
  }
  std::vector<double> d(order + 1);
  d[0] = f(x);
  for (std::size_t k = 1; k <= order; ++k) d[k] = fd_derivative(f, x, k, scale, kind);
  return d;
}

/**
 * |forward - backward| one-sided estimates of f^(k) at x, k = 0..order.
 * f must be evaluable on both sides of x. The k = 0 entry compares the
 * left and right limits, each extrapolated from four nodes excluding x.
 */
template <class F>
std::vector<double> one_sided_jumps(F&& f, double x, std::size_t order, double scale) {
  if (order > kMaxFdOrder) {
    throw std::invalid_argument("one_sided_jumps: order must be <= 6");
  }
  std::vector<double> out(order + 1, 0.0);
  const double h0 = fd_step(0, scale);
  const double left_nodes[] = {-1.0, -2.0, -3.0, -4.0};
  const double right_nodes[] = {1.0, 2.0, 3.0, 4.0};
  const auto wl = fornberg_weights(0.0, left_nodes, 0)[0];
  const auto wr = fornberg_weights(0.0, right_nodes, 0)[0];
  double lim_l = 0.0, lim_r = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    lim_l += wl[i] * f(x + left_nodes[i] * h0);
    lim_r += wr[i] * f(x + right_nodes[i] * h0);
  }
  out[0] = std::abs(lim_r - lim_l);
  for (std::size_t k = 1; k <= order; ++k) {
    out[k] = std::abs(fd_derivative(f, x, k, scale, Stencil::forward) -
                      fd_derivative(f, x, k, scale, Stencil::backward));
  }
  return out;
}

/**
 * Check tolerance for an order-k finite-difference estimate:
 * 10^-(8-k), relaxed x100 for one-sided stencils and x1000 for the
 * expo-rational family. Applied relative to max(1, |reference|).
 */
inline double fd_tolerance(std::size_t k, bool one_sided, bool expo_rational = false) {
  if (k > kMaxFdOrder) throw std::invalid_argument("fd_tolerance: order must be <= 6");
  double tol = std::pow(10.0, -(8.0 - static_cast<double>(k)));
  if (one_sided) tol *= 100.0;
  if (expo_rational) tol *= 1000.0;
  return tol;
}

inline bool fd_agrees(double estimate, double reference, std::size_t k, bool one_sided,
                      bool expo_rational = false) {
  return std::abs(estimate - reference) <=
         fd_tolerance(k, one_sided, expo_rational) * std::max(1.0, std::abs(reference));
}

enum class Side { left, right };

/**
 * One-sided derivative estimate at an end of uniformly gridded samples
 * spanning `domain`. Uses the 2*order+2 samples nearest that end.
 */
inline EndpointJet sampled_to_jet(std::span<const double> samples, const Interval& domain,
                                  Side endpoint, std::size_t order) {
  const std::size_t need = 2 * order + 2;
  if (samples.size() < std::max<std::size_t>(need, 2)) {
    throw std::invalid_argument("sampled_to_jet: " + std::to_string(samples.size()) +
                                " samples, need at least " + std::to_string(need));
  }
  const double dx = domain.length() / static_cast<double>(samples.size() - 1);
  std::vector<double> nodes(need), vals(need);
  for (std::size_t i = 0; i < need; ++i) {
    if (endpoint == Side::left) {
      nodes[i] = static_cast<double>(i);
      vals[i] = samples[i];
    } else {
      nodes[i] = -static_cast<double>(i);
      vals[i] = samples[samples.size() - 1 - i];
    }
  }
  const auto w = fornberg_weights(0.0, nodes, order);
  EndpointJet jet;
  jet.point = endpoint == Side::left ? domain.a() : domain.b();
  jet.derivatives.assign(order + 1, 0.0);
  jet.derivatives[0] = vals[0];
  for (std::size_t k = 1; k <= order; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < need; ++i) s += w[k][i] * vals[i];
    jet.derivatives[k] = s / std::pow(dx, static_cast<double>(k));
  }
  return jet;
}

}  // namespace flatblend::numerics

#pragma once

/**
 * @file hermite.hpp
 * @brief Two-point Hermite interpolation written with Beta step functions,
 *        and an independent confluent-Vandermonde oracle.
 *
 * With xi = (x - a0) / L, L = b0 - a0, the interpolant of degree l + r + 1 is
 *
 *   H = sum_j F_j xi^j B_{r,l-j}(1 - xi) + sum_k G_k (xi - 1)^k B_{l,r-k}(xi),
 *
 * where F_j = f^(j)(a0) L^j / j! and G_k = g^(k)(b0) L^k / k!.
 */

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatblend/jet.hpp"
#include "flatblend/smooth_function.hpp"
#include "flatblend/step_functions.hpp"
#include "flatblend/types.hpp"

namespace flatblend {

/// Endpoint data for two-point Hermite interpolation; (l, r) are the jet orders.
struct HermiteSpec {
  EndpointJet left;
  EndpointJet right;

  std::size_t l() const { return left.order(); }
  std::size_t r() const { return right.order(); }
  std::size_t degree() const { return l() + r() + 1; }

  /// [a0, b0]; throws std::invalid_argument for a degenerate or reversed pair.
  Interval interval() const { return Interval(left.point, right.point); }

  void validate() const {
    if (left.derivatives.empty() || right.derivatives.empty()) {
      throw std::invalid_argument("HermiteSpec: endpoint jets need at least a value");
    }
    (void)interval();
  }
};

namespace detail {

// Scaled Taylor coefficients c_i = d_i L^i / i!.
inline std::vector<double> scaled_taylor(const std::vector<double>& d, double len) {
  std::vector<double> c(d.size());
  double p = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i > 0) p *= len / static_cast<double>(i);
    c[i] = d[i] * p;
  }
  return c;
}

}  // namespace detail

/// Hermite interpolant as a SmoothFunction on [a0, b0] (no flatness claimed).
inline SmoothFunction hermite_interpolant(const HermiteSpec& spec) {
  spec.validate();
  const Interval dom = spec.interval();
  const std::size_t l = spec.l(), r = spec.r();
  const double a0 = dom.a(), len = dom.length();
  const auto F = detail::scaled_taylor(spec.left.derivatives, len);
  const auto G = detail::scaled_taylor(spec.right.derivatives, len);
  return SmoothFunction(
      dom,
      [F, G, l, r, a0, len](double x, std::size_t k) {
        const Jet xi = (Jet::variable(x, k) - a0) / len;
        const Jet eta = 1.0 - xi;
        Jet h = Jet::constant(0.0, k, x);
        Jet xi_pow = Jet::constant(1.0, k, x);
        for (std::size_t j = 0; j <= l; ++j) {
          if (F[j] != 0.0) h += F[j] * xi_pow * beta_jet(r, l - j, eta);
          xi_pow = xi_pow * xi;
        }
        Jet xm1_pow = Jet::constant(1.0, k, x);
        const Jet xm1 = xi - 1.0;
        for (std::size_t j = 0; j <= r; ++j) {
          if (G[j] != 0.0) h += G[j] * xm1_pow * beta_jet(l, r - j, xi);
          xm1_pow = xm1_pow * xm1;
        }
        return h;
      },
      {0, 0}, "hermite(" + std::to_string(l) + "," + std::to_string(r) + ")");
}

/// Ascending coefficients in xi of the interpolant, read off its jet at a0.
inline std::vector<double> hermite_xi_coefficients(const HermiteSpec& spec) {
  const auto h = hermite_interpolant(spec);
  const Jet j = h.jet(spec.left.point, spec.degree());
  const double len = spec.interval().length();
  std::vector<double> c(j.order() + 1);
  double p = 1.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = j[i] * p;
    p *= len;
  }
  return c;
}

/// Largest l + r accepted by the confluent-system oracle.
inline constexpr std::size_t kHermiteOracleMaxOrder = 12;

/**
 * Solves the confluent Vandermonde system for the ascending xi-coefficients
 * of the degree l + r + 1 interpolant: rows are the scaled Taylor conditions
 * p^(j)(0)/j! = F_j and p^(k)(1)/k! = G_k. Pivoted LU via Eigen.
 */
inline std::vector<double> hermite_oracle(const HermiteSpec& spec) {
  spec.validate();
  const std::size_t l = spec.l(), r = spec.r();
  if (l + r > kHermiteOracleMaxOrder) {
    throw std::domain_error("hermite_oracle: l + r = " + std::to_string(l + r) +
                            " exceeds the conditioning guard " +
                            std::to_string(kHermiteOracleMaxOrder));
  }
  const std::size_t n = l + r + 2;
  const double len = spec.interval().length();
  const auto F = detail::scaled_taylor(spec.left.derivatives, len);
  const auto G = detail::scaled_taylor(spec.right.derivatives, len);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
  Eigen::Index row = 0;
  for (std::size_t j = 0; j <= l; ++j, ++row) {
    A(row, static_cast<Eigen::Index>(j)) = 1.0;
    rhs(row) = F[j];
  }
  for (std::size_t k = 0; k <= r; ++k, ++row) {
    // p^(k)(1)/k! = sum_i C(i, k) c_i
    for (std::size_t i = k; i < n; ++i) {
      A(row, static_cast<Eigen::Index>(i)) = detail::binomial_double(i, k);
    }
    rhs(row) = G[k];
  }
  const Eigen::VectorXd c = A.fullPivLu().solve(rhs);
  return std::vector<double>(c.data(), c.data() + c.size());
}

/// Evaluates ascending xi-coefficients at x on [a0, b0].
inline double eval_xi_polynomial(const std::vector<double>& c, const Interval& dom, double x) {
  const double xi = (x - dom.a()) / dom.length();
  double s = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) s = s * xi + c[i];
  return s;
}

}  // namespace flatblend

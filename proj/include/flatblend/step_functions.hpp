#pragma once

/**
 * @file step_functions.hpp
 * @brief Smooth step functions on [0, 1]: regularized incomplete Beta,
 *        rational B-function, logistic expo-rational, and the trigonometric
 *        family T_m together with its exact coefficients.
 *
 * Every constructor returns a SmoothFunction with exact jets and declared
 * flatness orders. The Fabius function lives in fabius.hpp.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatblend/jet.hpp"
#include "flatblend/numerics/rational.hpp"
#include "flatblend/smooth_function.hpp"
#include "flatblend/types.hpp"

namespace flatblend {

inline const Interval kUnitInterval{0.0, 1.0};

namespace detail {

/// C(n, k) in double; exact while the result stays below 2^53.
inline double binomial_double(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(c);
}

inline std::size_t require_finite(FlatOrder o, const char* who) {
  if (!o.is_finite()) {
    throw std::invalid_argument(std::string(who) + ": orders must be finite");
  }
  return o.value();
}

// Coefficient-wise Neumaier summation of equal-order jets.
inline Jet compensated_sum(std::span<const Jet> terms) {
  const std::size_t k = terms.front().order();
  std::vector<double> sum(k + 1, 0.0), comp(k + 1, 0.0);
  for (const Jet& t : terms) {
    for (std::size_t i = 0; i <= k; ++i) {
      const double v = t[i];
      const double s = sum[i] + v;
      if (std::abs(sum[i]) >= std::abs(v)) {
        comp[i] += (sum[i] - s) + v;
      } else {
        comp[i] += (v - s) + sum[i];
      }
      sum[i] = s;
    }
  }
  for (std::size_t i = 0; i <= k; ++i) sum[i] += comp[i];
  return Jet(std::move(sum), terms.front().basepoint());
}

}  // namespace detail

/**
 * B_{l,r}(xi) = xi^(l+1) * sum_{i=0}^{r} C(l+i, i) (1-xi)^i evaluated on a
 * jet argument. Horner's scheme for l + r < 12; for larger orders the
 * terms are summed with compensation.
 */
inline Jet beta_jet(std::size_t l, std::size_t r, const Jet& xi) {
  const Jet y = 1.0 - xi;
  Jet series = Jet::constant(0.0, xi.order(), xi.basepoint());
  if (l + r < 12) {
    series = Jet::constant(detail::binomial_double(l + r, r), xi.order(), xi.basepoint());
    for (std::size_t i = r; i-- > 0;) {
      series = series * y;
      series += detail::binomial_double(l + i, i);
    }
  } else {
    std::vector<Jet> terms;
    terms.reserve(r + 1);
    Jet ypow = Jet::constant(1.0, xi.order(), xi.basepoint());
    for (std::size_t i = 0; i <= r; ++i) {
      terms.push_back(detail::binomial_double(l + i, i) * ypow);
      ypow = ypow * y;
    }
    series = detail::compensated_sum(terms);
  }
  return pow(xi, static_cast<int>(l + 1)) * series;
}

/// Scalar B_{l,r}(x).
inline double beta_value(std::size_t l, std::size_t r, double x) {
  return beta_jet(l, r, Jet::constant(x, 0)).value();
}

/// Regularized incomplete Beta step function B_{l,r} on [0, 1].
inline SmoothFunction beta_step(std::size_t l, std::size_t r) {
  return SmoothFunction(
      kUnitInterval,
      [l, r](double x, std::size_t k) { return beta_jet(l, r, Jet::variable(x, k)); },
      {l, r}, "B_{" + std::to_string(l) + "," + std::to_string(r) + "}");
}

inline SmoothFunction beta_step(StepOrders orders) {
  return beta_step(detail::require_finite(orders.left, "beta_step"),
                   detail::require_finite(orders.right, "beta_step"));
}

/// Rational B-function R_{l,r}(x) = x^(l+1) / (x^(l+1) + (1-x)^(r+1)).
inline SmoothFunction rational_step(std::size_t l, std::size_t r) {
  return SmoothFunction(
      kUnitInterval,
      [l, r](double x, std::size_t k) {
        const Jet X = Jet::variable(x, k);
        const Jet num = pow(X, static_cast<int>(l + 1));
        return num / (num + pow(1.0 - X, static_cast<int>(r + 1)));
      },
      {l, r}, "R_{" + std::to_string(l) + "," + std::to_string(r) + "}");
}

inline SmoothFunction rational_step(StepOrders orders) {
  return rational_step(detail::require_finite(orders.left, "rational_step"),
                       detail::require_finite(orders.right, "rational_step"));
}

/// |exponent| beyond which the logistic expo-rational saturates to 0 or 1.
inline const double kExpoSaturation = std::log(std::numeric_limits<double>::max());

/**
 * Jet of E(x) = 1 / (1 + exp(1/x - 1/(1-x))). Exactly flat (0 or 1 with
 * all derivatives zero) at x in {0, 1} and wherever the exponent exceeds
 * the saturation bound. Interior jets use the form that never evaluates
 * exp of a positive argument.
 */
inline Jet expo_rational_jet(double x, std::size_t k) {
  if (x <= 0.0) return Jet::constant(0.0, k, x);
  if (x >= 1.0) return Jet::constant(1.0, k, x);
  const double u = 1.0 / x - 1.0 / (1.0 - x);
  if (!(u <= kExpoSaturation)) return Jet::constant(0.0, k, x);
  if (!(u >= -kExpoSaturation)) return Jet::constant(1.0, k, x);
  const Jet X = Jet::variable(x, k);
  const Jet U = 1.0 / X - 1.0 / (1.0 - X);
  if (u > 0.0) {
    const Jet w = exp(-U);
    return w / (1.0 + w);
  }
  return 1.0 / (1.0 + exp(U));
}

/// Logistic expo-rational B-function; flat to every order at both ends.
inline SmoothFunction expo_rational_step() {
  return SmoothFunction(kUnitInterval, expo_rational_jet,
                        {FlatOrder::unbounded(), FlatOrder::unbounded()}, "E");
}

/// Exact coefficients of the cosine expansion of T_m.
struct TrigCoefficients {
  unsigned m = 0;
  std::vector<numerics::Rational> a;  // a_{m,j}, j = 0..m
  numerics::Rational a_m;             // sum of a

  /// alpha_j = -a_{m,j} / (2 a_m), the cosine weights of T_m - 1/2.
  std::vector<numerics::Rational> alphas() const {
    std::vector<numerics::Rational> out;
    out.reserve(a.size());
    for (const auto& q : a) out.push_back(-q / (2 * a_m));
    return out;
  }
};

/// Largest m accepted by the trigonometric family.
inline constexpr unsigned kMaxTrigM = 30;

/**
 * a_{m,j} = (-1)^(m-j) C(2m+1, m-j) / (2j+1) and a_m = sum_j a_{m,j}.
 * Before returning, the even-moment identities sum_j (2j+1)^(2k) a_{m,j} = 0
 * for k = 1..m are checked exactly; a failure throws std::logic_error.
 */
inline TrigCoefficients trig_coefficients(unsigned m) {
  if (m > kMaxTrigM) {
    throw std::invalid_argument("trig_coefficients: m = " + std::to_string(m) +
                                " exceeds the supported bound " + std::to_string(kMaxTrigM));
  }
  using numerics::BigInt;
  using numerics::Rational;
  TrigCoefficients c;
  c.m = m;
  c.a_m = 0;
  for (unsigned j = 0; j <= m; ++j) {
    Rational q(numerics::binomial(2 * m + 1, m - j), BigInt(2 * j + 1));
    if ((m - j) % 2 == 1) q = -q;
    c.a.push_back(q);
    c.a_m += q;
  }
  for (unsigned k = 1; k <= m; ++k) {
    Rational moment = 0;
    for (unsigned j = 0; j <= m; ++j) {
      moment += c.a[j] * Rational(numerics::pow_int(BigInt(2 * j + 1), 2 * k));
    }
    if (moment != 0) {
      throw std::logic_error("trig_coefficients: moment identity fails at m = " +
                             std::to_string(m) + ", k = " + std::to_string(k));
    }
  }
  return c;
}

struct OlofsenReport {
  numerics::Rational alpha_sum;               // expected -1/2
  std::vector<numerics::Rational> moments;    // k = 1..m, expected 0
  bool holds() const {
    if (alpha_sum != numerics::Rational(-1, 2)) return false;
    for (const auto& q : moments) {
      if (q != 0) return false;
    }
    return true;
  }
};

/// Exact residuals of sum alpha_j = -1/2 and sum (2j+1)^(2k) alpha_j = 0.
inline OlofsenReport olofsen_check(const TrigCoefficients& c) {
  using numerics::BigInt;
  using numerics::Rational;
  const auto alpha = c.alphas();
  OlofsenReport r;
  r.alpha_sum = 0;
  for (const auto& q : alpha) r.alpha_sum += q;
  for (unsigned k = 1; k <= c.m; ++k) {
    Rational s = 0;
    for (unsigned j = 0; j <= c.m; ++j) {
      s += alpha[j] * Rational(numerics::pow_int(BigInt(2 * j + 1), 2 * k));
    }
    r.moments.push_back(s);
  }
  return r;
}

/// c_m = (1*3*...*(2m+1) * pi^(m+1))^2 / 2.
inline double trig_ode_constant(unsigned m) {
  double odd = 1.0;
  for (unsigned j = 0; j <= m; ++j) odd *= static_cast<double>(2 * j + 1);
  const double v = odd * std::pow(std::numbers::pi, static_cast<double>(m + 1));
  return 0.5 * v * v;
}

namespace detail {

struct TrigData {
  unsigned m = 0;
  std::vector<double> alpha;
  std::vector<double> omega;
  // Exact even moments sum_j alpha_j (2j+1)^(2k), rounded once, k = 0..kMaxMoment.
  std::vector<double> moments;
};

inline constexpr std::size_t kTrigExactEndpointOrder = 64;

inline TrigData make_trig_data(unsigned m) {
  using numerics::BigInt;
  using numerics::Rational;
  const auto coeffs = trig_coefficients(m);
  const auto alpha = coeffs.alphas();
  TrigData d;
  d.m = m;
  for (unsigned j = 0; j <= m; ++j) {
    d.alpha.push_back(numerics::to_double(alpha[j]));
    d.omega.push_back(static_cast<double>(2 * j + 1) * std::numbers::pi);
  }
  for (unsigned k = 0; 2 * k <= kTrigExactEndpointOrder; ++k) {
    Rational s = 0;
    for (unsigned j = 0; j <= m; ++j) {
      s += alpha[j] * Rational(numerics::pow_int(BigInt(2 * j + 1), 2 * k));
    }
    d.moments.push_back(numerics::to_double(s));
  }
  return d;
}

inline Jet trig_jet(const TrigData& d, double x, std::size_t order) {
  std::vector<double> c(order + 1, 0.0);
  if ((x == 0.0 || x == 1.0) && order <= kTrigExactEndpointOrder) {
    // cos((2j+1) pi x) = +-1 and sin(...) = 0 exactly at the ends.
    const double sign = x == 0.0 ? 1.0 : -1.0;
    c[0] = 0.5 + sign * d.moments[0];
    double pik = 1.0;  // pi^(2k) / (2k)!
    for (std::size_t n = 1; n <= order; ++n) {
      pik *= std::numbers::pi / static_cast<double>(n);
      if (n % 2 == 0) {
        const double s = (n / 2) % 2 == 0 ? 1.0 : -1.0;
        c[n] = sign * s * pik * d.moments[n / 2];
      }
    }
    return Jet(std::move(c), x);
  }
  c[0] = 0.5;
  for (std::size_t j = 0; j < d.alpha.size(); ++j) {
    const double w = d.omega[j];
    const double cw = std::cos(w * x);
    const double sw = std::sin(w * x);
    double scale = d.alpha[j];  // alpha_j w^n / n!
    for (std::size_t n = 0; n <= order; ++n) {
      if (n > 0) scale *= w / static_cast<double>(n);
      double t = 0.0;
      switch (n % 4) {
        case 0: t = cw; break;
        case 1: t = -sw; break;
        case 2: t = -cw; break;
        default: t = sw; break;
      }
      c[n] += scale * t;
    }
  }
  return Jet(std::move(c), x);
}

}  // namespace detail

/**
 * Trigonometric step function T_m(x) = 1/2 + sum_j alpha_j cos((2j+1) pi x),
 * the normalized integral of sin^(2m+1)(pi t). Flat of order 2m+1 at both ends.
 */
inline SmoothFunction trig_step(unsigned m) {
  auto data = std::make_shared<const detail::TrigData>(detail::make_trig_data(m));
  return SmoothFunction(
      kUnitInterval,
      [data](double x, std::size_t k) { return detail::trig_jet(*data, x, k); },
      {2 * m + 1, 2 * m + 1}, "T_" + std::to_string(m));
}

/**
 * Maximum over the samples of |L_m[T_m](x) - c_m|, where
 * L_m = (D^2 + (2m+1)^2 pi^2) ... (D^2 + pi^2), applied factor by factor to
 * the raw derivatives of an order 2m+2 jet.
 */
inline double ode_residual(unsigned m, std::span<const double> x_samples) {
  const auto t = trig_step(m);
  const double cm = trig_ode_constant(m);
  double worst = 0.0;
  for (double x : x_samples) {
    if (!(x > 0.0 && x < 1.0)) {
      throw std::invalid_argument("ode_residual: samples must lie in (0, 1)");
    }
    std::vector<double> d = t.jet(x, 2 * m + 2).derivatives();
    for (unsigned j = 0; j <= m; ++j) {
      const double w2 = std::pow(static_cast<double>(2 * j + 1) * std::numbers::pi, 2);
      std::vector<double> next(d.size() - 2);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] = d[i + 2] + w2 * d[i];
      d = std::move(next);
    }
    worst = std::max(worst, std::abs(d[0] - cm));
  }
  return worst;
}

}  // namespace flatblend

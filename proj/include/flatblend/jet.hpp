#pragma once

/**
 * @file jet.hpp
 * @brief Truncated Taylor series (jets) of runtime order.
 *
 * A jet of order k at a basepoint x0 stores the normalized coefficients
 * c[i] = f^(i)(x0) / i! for i = 0..k. Arithmetic on jets is the
 * arithmetic of power series truncated after degree k, so products follow
 * the Leibniz rule and substitution follows the chain rule exactly.
 *
 * @code
 * auto x = flatblend::Jet::variable(0.3, 4);
 * auto y = flatblend::sin(3.0 * x) * flatblend::exp(x);
 * double third = y.derivative(3);
 * @endcode
 *
 * Orders never mix silently: binary operations on jets of different order
 * throw std::invalid_argument.
 */

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flatblend {

/// n! as a double (exact for n <= 22).
inline double factorial(std::size_t n) noexcept {
  double f = 1.0;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

class Jet {
 public:
  /// Order-0 jet with value 0.
  Jet() : coeffs_(1, 0.0) {}

  /// Jet from normalized coefficients; order = coeffs.size() - 1.
  explicit Jet(std::vector<double> coeffs, double basepoint = 0.0)
      : coeffs_(std::move(coeffs)), basepoint_(basepoint) {
    if (coeffs_.empty()) throw std::invalid_argument("Jet needs at least one coefficient");
  }

  Jet(std::initializer_list<double> coeffs, double basepoint = 0.0)
      : Jet(std::vector<double>(coeffs), basepoint) {}

  static Jet constant(double c, std::size_t order, double basepoint = 0.0) {
    std::vector<double> v(order + 1, 0.0);
    v[0] = c;
    return Jet(std::move(v), basepoint);
  }

  static Jet zero(std::size_t order, double basepoint = 0.0) {
    return constant(0.0, order, basepoint);
  }

  /// The identity function x -> x expanded at x0.
  static Jet variable(double x0, std::size_t order) {
    std::vector<double> v(order + 1, 0.0);
    v[0] = x0;
    if (order >= 1) v[1] = 1.0;
    return Jet(std::move(v), x0);
  }

  /// Jet from raw derivatives f(x0), f'(x0), ..., f^(k)(x0).
  static Jet from_derivatives(std::span<const double> derivs, double basepoint = 0.0) {
    if (derivs.empty()) throw std::invalid_argument("Jet::from_derivatives: empty input");
    std::vector<double> v(derivs.begin(), derivs.end());
    double f = 1.0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      f *= static_cast<double>(i);
      v[i] /= f;
    }
    return Jet(std::move(v), basepoint);
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  double basepoint() const noexcept { return basepoint_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t i) const { return coeffs_.at(i); }
  double& operator[](std::size_t i) { return coeffs_.at(i); }
  double value() const noexcept { return coeffs_[0]; }

  /// Raw derivative f^(i)(x0).
  double derivative(std::size_t i) const { return coeffs_.at(i) * factorial(i); }

  /// All raw derivatives f^(0..k)(x0).
  std::vector<double> derivatives() const {
    std::vector<double> d(coeffs_);
    double f = 1.0;
    for (std::size_t i = 1; i < d.size(); ++i) {
      f *= static_cast<double>(i);
      d[i] *= f;
    }
    return d;
  }

  /// Same series cut to a lower order.
  Jet truncated(std::size_t order) const {
    if (order > this->order()) {
      throw std::invalid_argument("Jet::truncated cannot raise the order");
    }
    return Jet(std::vector<double>(coeffs_.begin(), coeffs_.begin() + order + 1), basepoint_);
  }

  Jet& with_basepoint(double x0) & {
    basepoint_ = x0;
    return *this;
  }

  Jet operator-() const {
    Jet r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  Jet& operator+=(double s) {
    coeffs_[0] += s;
    return *this;
  }
  Jet& operator-=(double s) {
    coeffs_[0] -= s;
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  Jet& operator/=(double s) {
    for (auto& c : coeffs_) c /= s;
    return *this;
  }

  Jet& operator+=(const Jet& other) {
    require_same_order(other, "add");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
  }
  Jet& operator-=(const Jet& other) {
    require_same_order(other, "subtract");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
  }

  void require_same_order(const Jet& other, const char* what) const {
    if (order() != other.order()) {
      throw std::invalid_argument(std::string("Jet ") + what + ": order mismatch (" +
                                  std::to_string(order()) + " vs " +
                                  std::to_string(other.order()) + ")");
    }
  }

 private:
  std::vector<double> coeffs_;
  double basepoint_ = 0.0;
};

inline Jet jet_add(const Jet& a, const Jet& b) {
  Jet r(a);
  r += b;
  return r;
}

inline Jet jet_sub(const Jet& a, const Jet& b) {
  Jet r(a);
  r -= b;
  return r;
}

/// Cauchy product truncated at the common order (Leibniz rule).
inline Jet jet_mul(const Jet& a, const Jet& b) {
  a.require_same_order(b, "multiply");
  const std::size_t k = a.order();
  std::vector<double> c(k + 1, 0.0);
  // Symmetric pairing makes the product bitwise commutative.
  for (std::size_t n = 0; n <= k; ++n) {
    double s = 0.0;
    for (std::size_t i = 0; 2 * i < n; ++i) s += a[i] * b[n - i] + a[n - i] * b[i];
    if (n % 2 == 0) s += a[n / 2] * b[n / 2];
    c[n] = s;
  }
  return Jet(std::move(c), a.basepoint());
}

/// Series quotient; throws std::domain_error when b has a zero constant term.
inline Jet jet_div(const Jet& a, const Jet& b) {
  a.require_same_order(b, "divide");
  if (b[0] == 0.0) throw std::domain_error("Jet divide: divisor has zero constant term");
  const std::size_t k = a.order();
  std::vector<double> q(k + 1, 0.0);
  for (std::size_t n = 0; n <= k; ++n) {
    double s = a[n];
    for (std::size_t i = 0; i < n; ++i) s -= b[n - i] * q[i];
    q[n] = s / b[0];
  }
  return Jet(std::move(q), a.basepoint());
}

/**
 * Substitution outer(inner): `outer` is the jet of g at y0 = inner[0] and
 * the result is the jet of g(f(x)) at inner's basepoint. Evaluated by
 * Horner's scheme in the shifted series inner - inner[0].
 */
inline Jet jet_compose(const Jet& outer, const Jet& inner) {
  outer.require_same_order(inner, "compose");
  const std::size_t k = inner.order();
  Jet shift(inner);
  shift[0] = 0.0;
  Jet acc = Jet::constant(outer[k], k, inner.basepoint());
  for (std::size_t i = k; i-- > 0;) {
    acc = jet_mul(acc, shift);
    acc[0] += outer[i];
  }
  return acc;
}

enum class Elementary { sin, cos, exp, integer_power };

namespace detail {

// sin and cos of a series together: s' = c u', c' = -s u'.
inline std::pair<Jet, Jet> sin_cos(const Jet& u) {
  const std::size_t k = u.order();
  std::vector<double> s(k + 1, 0.0), c(k + 1, 0.0);
  s[0] = std::sin(u[0]);
  c[0] = std::cos(u[0]);
  for (std::size_t n = 1; n <= k; ++n) {
    double ss = 0.0, cc = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double w = static_cast<double>(j) * u[j];
      ss += w * c[n - j];
      cc += w * s[n - j];
    }
    s[n] = ss / static_cast<double>(n);
    c[n] = -cc / static_cast<double>(n);
  }
  return {Jet(std::move(s), u.basepoint()), Jet(std::move(c), u.basepoint())};
}

}  // namespace detail

inline Jet sin(const Jet& u) { return detail::sin_cos(u).first; }
inline Jet cos(const Jet& u) { return detail::sin_cos(u).second; }

/// e = exp(u) via e' = e u'.
inline Jet exp(const Jet& u) {
  const std::size_t k = u.order();
  std::vector<double> e(k + 1, 0.0);
  e[0] = std::exp(u[0]);
  for (std::size_t n = 1; n <= k; ++n) {
    double s = 0.0;
    for (std::size_t j = 1; j <= n; ++j) s += static_cast<double>(j) * u[j] * e[n - j];
    e[n] = s / static_cast<double>(n);
  }
  return Jet(std::move(e), u.basepoint());
}

/// u^p for integer p; negative powers require a nonzero constant term.
inline Jet pow(const Jet& u, int p) {
  if (p < 0) return jet_div(Jet::constant(1.0, u.order(), u.basepoint()), pow(u, -p));
  Jet result = Jet::constant(1.0, u.order(), u.basepoint());
  Jet base(u);
  for (unsigned e = static_cast<unsigned>(p); e != 0; e >>= 1) {
    if (e & 1u) result = jet_mul(result, base);
    if (e > 1) base = jet_mul(base, base);
  }
  return result;
}

inline Jet jet_elementary(Elementary kind, const Jet& inner, int exponent = 0) {
  switch (kind) {
    case Elementary::sin: return sin(inner);
    case Elementary::cos: return cos(inner);
    case Elementary::exp: return exp(inner);
    case Elementary::integer_power: return pow(inner, exponent);
  }
  throw std::invalid_argument("jet_elementary: unknown kind");
}

inline Jet operator+(const Jet& a, const Jet& b) { return jet_add(a, b); }
inline Jet operator-(const Jet& a, const Jet& b) { return jet_sub(a, b); }
inline Jet operator*(const Jet& a, const Jet& b) { return jet_mul(a, b); }
inline Jet operator/(const Jet& a, const Jet& b) { return jet_div(a, b); }

inline Jet operator+(Jet a, double s) { return a += s; }
inline Jet operator+(double s, Jet a) { return a += s; }
inline Jet operator-(Jet a, double s) { return a -= s; }
inline Jet operator-(double s, const Jet& a) {
  Jet r = -a;
  r += s;
  return r;
}
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }
inline Jet operator/(Jet a, double s) { return a /= s; }
inline Jet operator/(double s, const Jet& a) {
  return jet_div(Jet::constant(s, a.order(), a.basepoint()), a);
}

}  // namespace flatblend

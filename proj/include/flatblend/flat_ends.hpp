#pragma once

/**
 * @file flat_ends.hpp
 * @brief Algebra of functions with flat ends: products, linear combinations,
 *        composition, affine maps, staircases, extension to the real line,
 *        and the numerical checks (flatness, monotonicity, point symmetry)
 *        used to certify them.
 *
 * Declared flatness orders follow conservative rules: products and linear
 * combinations take the componentwise minimum, compositions inherit the
 * outer function's orders. True orders may be higher.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flatblend/jet.hpp"
#include "flatblend/numerics/finite_difference.hpp"
#include "flatblend/smooth_function.hpp"
#include "flatblend/types.hpp"

namespace flatblend {

namespace detail {

inline void require_same_domain(const SmoothFunction& f, const SmoothFunction& g,
                                const char* who) {
  if (!(f.domain() == g.domain())) {
    throw std::invalid_argument(std::string(who) + ": domain mismatch between '" +
                                f.label() + "' and '" + g.label() + "'");
  }
}

inline std::string format_interval(const Interval& i) {
  return "[" + std::to_string(i.a()) + ", " + std::to_string(i.b()) + "]";
}

}  // namespace detail

/// Pointwise product h*f with Leibniz jets; declared orders are the minimum.
inline SmoothFunction product(const SmoothFunction& h, const SmoothFunction& f) {
  detail::require_same_domain(h, f, "product");
  return SmoothFunction(
      h.domain(), [h, f](double x, std::size_t k) { return h.jet(x, k) * f.jet(x, k); },
      min(h.flat(), f.flat()), "(" + h.label() + ")*(" + f.label() + ")");
}

struct LinearTerm {
  double coefficient = 1.0;
  SmoothFunction function;
};

/**
 * Pointwise linear combination. Terms sharing a handle are merged first,
 * so f - f is recognised as the zero function (flat to every order).
 */
inline SmoothFunction lincomb(const std::vector<LinearTerm>& terms) {
  if (terms.empty()) throw std::invalid_argument("lincomb: no terms");
  std::vector<LinearTerm> merged;
  for (const auto& t : terms) {
    detail::require_same_domain(terms.front().function, t.function, "lincomb");
    auto it = std::find_if(merged.begin(), merged.end(), [&](const LinearTerm& m) {
      return m.function.same_handle(t.function);
    });
    if (it == merged.end()) {
      merged.push_back(t);
    } else {
      it->coefficient += t.coefficient;
    }
  }
  std::erase_if(merged, [](const LinearTerm& t) { return t.coefficient == 0.0; });
  const Interval domain = terms.front().function.domain();
  if (merged.empty()) return constant_function(domain, 0.0).with_label("0");

  StepOrders flat = merged.front().function.flat();
  std::string label;
  for (const auto& t : merged) {
    flat = min(flat, t.function.flat());
    if (!label.empty()) label += " + ";
    label += std::to_string(t.coefficient) + "*" + t.function.label();
  }
  return SmoothFunction(
      domain,
      [merged](double x, std::size_t k) {
        Jet acc = Jet::constant(0.0, k, x);
        for (const auto& t : merged) acc += t.coefficient * t.function.jet(x, k);
        return acc;
      },
      flat, label);
}

/// Grid size used to check range containment for compositions.
inline constexpr std::size_t kRangeCheckGrid = 1024;

/**
 * h o f for h on [c, d] and f: [a, b] -> [c, d] with f(a) = c, f(b) = d.
 * Endpoint mapping is checked to 1e-12 (relative to max(1, |c|, |d|)),
 * range containment on a kRangeCheckGrid-point grid. The result inherits
 * h's declared orders.
 */
inline SmoothFunction change_of_interval(const SmoothFunction& h, const SmoothFunction& f) {
  const Interval& outer = h.domain();
  const Interval& dom = f.domain();
  const double tol = 1e-12 * std::max({1.0, std::abs(outer.a()), std::abs(outer.b())});
  const double fa = f.value(dom.a());
  const double fb = f.value(dom.b());
  if (std::abs(fa - outer.a()) > tol || std::abs(fb - outer.b()) > tol) {
    throw std::invalid_argument("change_of_interval: '" + f.label() + "' maps the endpoints to " +
                                std::to_string(fa) + ", " + std::to_string(fb) +
                                " instead of " + detail::format_interval(outer));
  }
  for (std::size_t i = 0; i < kRangeCheckGrid; ++i) {
    const double y = f.value(dom.grid_point(i, kRangeCheckGrid));
    if (!outer.contains(y)) {
      throw std::invalid_argument("change_of_interval: '" + f.label() + "' leaves " +
                                  detail::format_interval(outer) + " (value " +
                                  std::to_string(y) + ")");
    }
  }
  return SmoothFunction(
      dom,
      [h, f](double x, std::size_t k) {
        Jet inner = f.jet(x, k);
        inner[0] = h.domain().clamp(inner[0]);
        return jet_compose(h.jet(inner[0], k), inner);
      },
      h.flat(), h.label() + " o " + f.label());
}

/**
 * Parameters of x -> affine image of the graph of h. A domain point t is
 * sent to x = s (horizontal_scale t + horizontal_shift) with s = -1 under
 * reflect_y, and a value y to vertical_scale (+-y) + vertical_shift with the
 * sign flipped under reflect_x.
 */
struct AffineMap {
  double vertical_scale = 1.0;
  double vertical_shift = 0.0;
  double horizontal_scale = 1.0;
  double horizontal_shift = 0.0;
  bool reflect_x = false;
  bool reflect_y = false;
};

inline SmoothFunction affine_transform(const SmoothFunction& h, const AffineMap& m) {
  if (!(m.horizontal_scale > 0.0) || !std::isfinite(m.horizontal_scale)) {
    throw std::invalid_argument("affine_transform: horizontal_scale must be positive");
  }
  const double s = m.reflect_y ? -1.0 : 1.0;
  const double p = s * (m.horizontal_scale * h.domain().a() + m.horizontal_shift);
  const double q = s * (m.horizontal_scale * h.domain().b() + m.horizontal_shift);
  const Interval domain(std::min(p, q), std::max(p, q));
  const double vs = m.reflect_x ? -m.vertical_scale : m.vertical_scale;
  return SmoothFunction(
      domain,
      [h, m, s, vs](double x, std::size_t k) {
        Jet t = (s * Jet::variable(x, k) - m.horizontal_shift) / m.horizontal_scale;
        t[0] = h.domain().clamp(t[0]);
        return vs * jet_compose(h.jet(t[0], k), t) + m.vertical_shift;
      },
      m.reflect_y ? h.flat().swapped() : h.flat(), "affine(" + h.label() + ")");
}

namespace detail {

inline void require_step_endpoints(const SmoothFunction& sigma, const char* who) {
  if (!(sigma.domain() == Interval(0.0, 1.0))) {
    throw std::invalid_argument(std::string(who) + ": '" + sigma.label() +
                                "' is not defined on [0, 1]");
  }
  const double s0 = sigma.value(0.0);
  const double s1 = sigma.value(1.0);
  if (std::abs(s0) > 1e-12 || std::abs(s1 - 1.0) > 1e-12) {
    throw std::invalid_argument(std::string(who) + ": '" + sigma.label() +
                                "' does not map 0 -> 0 and 1 -> 1 (got " +
                                std::to_string(s0) + ", " + std::to_string(s1) + ")");
  }
}

}  // namespace detail

/// s(x) = c + (d - c) sigma((x - a) / (b - a)) on [a, b]; orders of sigma.
inline SmoothFunction to_staircase(const SmoothFunction& sigma, const Interval& source,
                                   const Interval& target) {
  detail::require_step_endpoints(sigma, "to_staircase");
  const double a = source.a(), len = source.length();
  const double c = target.a(), rise = target.length();
  return SmoothFunction(
      source,
      [sigma, a, len, c, rise](double x, std::size_t k) {
        Jet lam = (Jet::variable(x, k) - a) / len;
        lam[0] = std::clamp(lam[0], 0.0, 1.0);
        return c + rise * jet_compose(sigma.jet(lam[0], k), lam);
      },
      sigma.flat(), "staircase(" + sigma.label() + ")");
}

/// Derivative mismatch across a seam: |right-sided - left-sided| per order.
struct SeamJump {
  double point = 0.0;
  std::size_t order = 0;
  double jump = 0.0;
};

/**
 * sigma extended to the real line: 0 left of 0, sigma on [0, 1], 1 right
 * of 1. At x = 0 and x = 1 the sigma branch is used.
 */
class LineExtension {
 public:
  explicit LineExtension(SmoothFunction sigma) : sigma_(std::move(sigma)) {
    detail::require_step_endpoints(sigma_, "extend_step_to_line");
  }

  const SmoothFunction& step() const noexcept { return sigma_; }

  /// Declared continuity order at the seams (that of sigma).
  StepOrders orders() const noexcept { return sigma_.flat(); }

  Jet jet(double x, std::size_t k) const {
    if (x < 0.0) return Jet::constant(0.0, k, x);
    if (x > 1.0) return Jet::constant(1.0, k, x);
    return sigma_.jet(x, k);
  }
  double value(double x) const { return jet(x, 0).value(); }
  double operator()(double x) const { return value(x); }

  /// Exact jumps from sigma's endpoint jets, orders 0..max_order at 0 and 1.
  std::vector<SeamJump> seam_jumps(std::size_t max_order) const {
    std::vector<SeamJump> out;
    const auto d0 = sigma_.jet(0.0, max_order).derivatives();
    const auto d1 = sigma_.jet(1.0, max_order).derivatives();
    for (std::size_t k = 0; k <= max_order; ++k) out.push_back({0.0, k, std::abs(d0[k])});
    for (std::size_t k = 0; k <= max_order; ++k) {
      out.push_back({1.0, k, std::abs(d1[k] - (k == 0 ? 1.0 : 0.0))});
    }
    return out;
  }

  /// Same table from one-sided finite differences of the extension (orders <= 6).
  std::vector<SeamJump> seam_jumps_fd(std::size_t max_order, double scale = 1.0) const {
    std::vector<SeamJump> out;
    auto f = [this](double x) { return value(x); };
    for (double p : {0.0, 1.0}) {
      const auto j = numerics::one_sided_jumps(f, p, max_order, scale);
      for (std::size_t k = 0; k <= max_order; ++k) out.push_back({p, k, j[k]});
    }
    return out;
  }

 private:
  SmoothFunction sigma_;
};

inline LineExtension extend_step_to_line(const SmoothFunction& sigma) {
  return LineExtension(sigma);
}

struct SymmetryReport {
  double max_defect = 0.0;
  std::size_t grid_size = 0;
  double worst_x = 0.0;
};

/// sup over a uniform grid of |u(x) + u(a+b-x) - u(a) - u(b)|.
inline SymmetryReport symmetry_check(const SmoothFunction& u, std::size_t grid_size) {
  if (grid_size < 3) throw std::invalid_argument("symmetry_check: grid_size must be >= 3");
  const Interval& d = u.domain();
  const double ua = u.value(d.a()), ub = u.value(d.b());
  SymmetryReport r;
  r.grid_size = grid_size;
  r.worst_x = d.a();
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double x = d.grid_point(i, grid_size);
    const double mirror = d.grid_point(grid_size - 1 - i, grid_size);
    const double defect = std::abs(u.value(x) + u.value(mirror) - ua - ub);
    if (defect > r.max_defect) {
      r.max_defect = defect;
      r.worst_x = x;
    }
  }
  return r;
}

/// Maximum |f^(k)| over k = 1..order at one endpoint, from exact jets.
inline double endpoint_flatness_defect(const SmoothFunction& f, bool left, std::size_t order) {
  if (order == 0) return 0.0;
  const double x = left ? f.domain().a() : f.domain().b();
  const auto d = f.jet(x, order).derivatives();
  double worst = 0.0;
  for (std::size_t k = 1; k <= order; ++k) worst = std::max(worst, std::abs(d[k]));
  return worst;
}

/// Grid size used by derivative_scale.
inline constexpr std::size_t kDerivativeScaleGrid = 65;

/**
 * max(1, max |f^(k)|) over a uniform grid of f's domain, from exact jets.
 * Finite-difference tolerances are applied relative to this magnitude:
 * rounding and truncation errors scale with the derivative's size on the
 * stencil, not with its value at the check point (which may be zero).
 */
inline double derivative_scale(const SmoothFunction& f, std::size_t k,
                               std::size_t grid = kDerivativeScaleGrid) {
  const Interval& d = f.domain();
  double m = 1.0;
  for (std::size_t i = 0; i < grid; ++i) {
    m = std::max(m, std::abs(f.derivative(d.grid_point(i, grid), k)));
  }
  return m;
}

struct FlatnessReport {
  StepOrders tested;
  double left_defect = 0.0;   // max |f^(k)(a)|, k = 1..left (FD: relative to derivative_scale)
  double right_defect = 0.0;  // max |f^(k)(b)|, k = 1..right
  bool passed = false;
};

/// Exact-jet flatness test: derivatives 1..order vanish within `tol` at each end.
inline FlatnessReport flatness_check(const SmoothFunction& f, std::size_t left,
                                     std::size_t right, double tol = 1e-8) {
  FlatnessReport r;
  r.tested = {left, right};
  r.left_defect = endpoint_flatness_defect(f, true, left);
  r.right_defect = endpoint_flatness_defect(f, false, right);
  r.passed = r.left_defect <= tol && r.right_defect <= tol;
  return r;
}

/**
 * Finite-difference flatness test with one-sided stencils (orders <= 6).
 * Defects are |estimate| / derivative_scale(f, k), judged by the tolerance
 * schedule. `relaxed` selects the expo-rational relaxation.
 */
inline FlatnessReport flatness_check_fd(const SmoothFunction& f, std::size_t left,
                                        std::size_t right, double scale = 1.0,
                                        bool relaxed = false) {
  FlatnessReport r;
  r.tested = {left, right};
  r.passed = true;
  auto v = [&f](double x) { return f.value(x); };
  const Interval& d = f.domain();
  auto side = [&](double x, std::size_t order, numerics::Stencil kind, double& defect) {
    for (std::size_t k = 1; k <= order; ++k) {
      const double est = numerics::fd_derivative(v, x, k, scale * d.length(), kind);
      const double rel = std::abs(est) / derivative_scale(f, k);
      defect = std::max(defect, rel);
      if (!(rel <= numerics::fd_tolerance(k, true, relaxed))) r.passed = false;
    }
  };
  side(d.a(), left, numerics::Stencil::forward, r.left_defect);
  side(d.b(), right, numerics::Stencil::backward, r.right_defect);
  return r;
}

enum class Monotonicity { increasing, decreasing };

struct MonotoneReport {
  bool passed = true;
  std::size_t grid_size = 0;
  double first_failure = std::numeric_limits<double>::quiet_NaN();
};

/**
 * Strict monotonicity on a uniform grid, up to double resolution. Steps
 * between two values that both lie within `resolution` (relative to the
 * total rise) of the same endpoint value are exempt: there a strictly
 * monotone function saturates, and its evaluation carries rounding noise of
 * that size. Everywhere else each step must move strictly in `dir`.
 */
inline MonotoneReport monotone_check(const SmoothFunction& f, std::size_t grid_size,
                                     Monotonicity dir = Monotonicity::increasing,
                                     double resolution = 1e-12) {
  if (grid_size < 2) throw std::invalid_argument("monotone_check: grid_size must be >= 2");
  const Interval& d = f.domain();
  const double sign = dir == Monotonicity::increasing ? 1.0 : -1.0;
  const double lo = f.value(d.a()), hi = f.value(d.b());
  const double band = resolution * std::max(std::abs(hi - lo), 1e-300);
  MonotoneReport r;
  r.grid_size = grid_size;
  double prev = lo;
  for (std::size_t i = 1; i < grid_size; ++i) {
    const double x = d.grid_point(i, grid_size);
    const double v = f.value(x);
    const double step = sign * (v - prev);
    const bool saturated = (std::abs(v - lo) <= band && std::abs(prev - lo) <= band) ||
                           (std::abs(v - hi) <= band && std::abs(prev - hi) <= band);
    if (!saturated && !(step > 0.0)) {
      r.passed = false;
      r.first_failure = x;
      return r;
    }
    prev = v;
  }
  return r;
}

struct SymmetricStepReport {
  std::size_t check_order = 0;
  double symmetry_defect = 0.0;
  double left_flatness_defect = 0.0;
  double min_interior_derivative = 0.0;
  double right_flatness_defect = 0.0;
  bool symmetric = false;
  bool left_flat = false;
  bool increasing = false;
  /// Right flatness, implied by the three hypotheses and confirmed numerically.
  bool right_flat = false;

  bool passed() const noexcept { return symmetric && left_flat && increasing && right_flat; }
};

/**
 * Checks that sigma on [0, 1] is point symmetric, flat to check_order at 0,
 * and has positive derivative at interior grid points; then confirms the
 * flatness at 1 that these imply.
 */
inline SymmetricStepReport validate_symmetric_step(const SmoothFunction& sigma,
                                                   std::size_t check_order,
                                                   std::size_t grid_size = 1001) {
  if (!(sigma.domain() == Interval(0.0, 1.0))) {
    throw std::invalid_argument("validate_symmetric_step: '" + sigma.label() +
                                "' is not defined on [0, 1]");
  }
  SymmetricStepReport r;
  r.check_order = check_order;
  r.symmetry_defect = symmetry_check(sigma, grid_size).max_defect;
  r.symmetric = r.symmetry_defect < 1e-12;
  r.left_flatness_defect = endpoint_flatness_defect(sigma, true, check_order);
  r.left_flat = r.left_flatness_defect < 1e-8;
  r.min_interior_derivative = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < grid_size; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(grid_size - 1);
    r.min_interior_derivative = std::min(r.min_interior_derivative, sigma.derivative(x, 1));
  }
  r.increasing = r.min_interior_derivative > 0.0;
  r.right_flatness_defect = endpoint_flatness_defect(sigma, false, check_order);
  r.right_flat = r.right_flatness_defect < 1e-8;
  return r;
}

}  // namespace flatblend

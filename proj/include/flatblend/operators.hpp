#pragma once

/**
 * @file operators.hpp
 * @brief Leftward and rightward blend-to-zero operators.
 *
 * A leftward operator of orders (l, r) on [a0, b0] maps g to g0 with
 * g0^(j)(a0) = 0 for j <= l and g0^(k)(b0) = g^(k)(b0) for k <= r; a
 * rightward operator mirrors this. Three kinds are provided:
 *   - hermite:        Beta-weighted Taylor sums at the preserved endpoint,
 *   - multiplicative: pointwise product with a carrier having flat ends,
 *   - complement:     I - B for another operator B (direction reversed).
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flatblend/flat_ends.hpp"
#include "flatblend/hermite.hpp"
#include "flatblend/jet.hpp"
#include "flatblend/numerics/finite_difference.hpp"
#include "flatblend/smooth_function.hpp"
#include "flatblend/types.hpp"

namespace flatblend {

enum class Direction { leftward, rightward };
enum class OperatorKind { hermite, multiplicative, complement };

inline Direction opposite(Direction d) noexcept {
  return d == Direction::leftward ? Direction::rightward : Direction::leftward;
}

inline std::string to_string(Direction d) {
  return d == Direction::leftward ? "leftward" : "rightward";
}

inline std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::hermite: return "hermite";
    case OperatorKind::multiplicative: return "multiplicative";
    default: return "complement";
  }
}

class BlendOperator {
 public:
  /// Hermite-based operator; orders must be finite.
  static BlendOperator hermite(Direction dir, StepOrders orders, Interval interval) {
    if (!orders.finite()) {
      throw std::invalid_argument("BlendOperator::hermite: orders must be finite");
    }
    return BlendOperator(OperatorKind::hermite, dir, orders, interval, std::nullopt, nullptr);
  }

  /**
   * Multiplication by `carrier`. The carrier must live on `interval`, take
   * the values 0 and 1 at the ends matching the direction (leftward: 0 at
   * a0, 1 at b0), and declare flatness at least `orders`.
   */
  static BlendOperator multiplicative(Direction dir, SmoothFunction carrier, StepOrders orders) {
    const Interval& d = carrier.domain();
    const double lo = dir == Direction::leftward ? 0.0 : 1.0;
    const double ca = carrier.value(d.a()), cb = carrier.value(d.b());
    if (std::abs(ca - lo) > 1e-12 || std::abs(cb - (1.0 - lo)) > 1e-12) {
      throw std::invalid_argument("BlendOperator::multiplicative: " + to_string(dir) +
                                  " carrier '" + carrier.label() + "' has end values " +
                                  std::to_string(ca) + ", " + std::to_string(cb));
    }
    if (carrier.flat_left() < orders.left || carrier.flat_right() < orders.right) {
      throw std::invalid_argument("BlendOperator::multiplicative: carrier '" + carrier.label() +
                                  "' declares flatness " + carrier.flat().to_string() +
                                  " below the requested " + orders.to_string());
    }
    return BlendOperator(OperatorKind::multiplicative, dir, orders, d, std::move(carrier),
                         nullptr);
  }

  /**
   * Carrier sigma o lambda (leftward) or (1 - sigma) o lambda (rightward),
   * lambda(x) = (x - a0) / (b0 - a0). Orders default to those of sigma.
   */
  static BlendOperator from_step(Direction dir, const SmoothFunction& sigma, Interval interval,
                                 std::optional<StepOrders> orders = std::nullopt) {
    SmoothFunction s = to_staircase(sigma, interval, Interval(0.0, 1.0));
    if (dir == Direction::rightward) {
      s = affine_transform(s, AffineMap{.vertical_scale = -1.0, .vertical_shift = 1.0});
    }
    return multiplicative(dir, s.with_label(sigma.label() + " o lambda"),
                          orders.value_or(sigma.flat()));
  }

  OperatorKind kind() const noexcept { return kind_; }
  Direction direction() const noexcept { return dir_; }
  StepOrders orders() const noexcept { return orders_; }
  const Interval& interval() const noexcept { return interval_; }
  const std::optional<SmoothFunction>& carrier() const noexcept { return carrier_; }
  const BlendOperator* base() const noexcept { return base_.get(); }

  /// I - B with the opposite direction; the complement of a complement is B.
  BlendOperator complement() const {
    if (kind_ == OperatorKind::complement) return *base_;
    return BlendOperator(OperatorKind::complement, opposite(dir_), orders_, interval_,
                         std::nullopt, std::make_shared<const BlendOperator>(*this));
  }

  std::string describe() const {
    std::string s = to_string(kind_) + " " + to_string(dir_) + " " + orders_.to_string();
    if (carrier_) s += " carrier " + carrier_->label();
    if (base_) s += " of [" + base_->describe() + "]";
    return s;
  }

  /// Blended function on interval(); f must be defined on all of it.
  SmoothFunction apply(const SmoothFunction& f) const {
    if (!f.domain().contains(interval_)) {
      throw std::invalid_argument("BlendOperator::apply: '" + f.label() +
                                  "' is not defined on the operator interval");
    }
    const Interval dom = interval_;
    const StepOrders flat = dir_ == Direction::leftward ? StepOrders{orders_.left, 0}
                                                        : StepOrders{0, orders_.right};
    const std::string label = "B[" + f.label() + "]";
    switch (kind_) {
      case OperatorKind::hermite: {
        const std::size_t l = orders_.left.value(), r = orders_.right.value();
        HermiteSpec spec;
        if (dir_ == Direction::leftward) {
          spec.left = {dom.a(), std::vector<double>(l + 1, 0.0)};
          spec.right = {dom.b(), f.jet(dom.b(), r).derivatives()};
        } else {
          spec.left = {dom.a(), f.jet(dom.a(), l).derivatives()};
          spec.right = {dom.b(), std::vector<double>(r + 1, 0.0)};
        }
        return hermite_interpolant(spec).with_flat(flat).with_label(label);
      }
      case OperatorKind::multiplicative: {
        const SmoothFunction c = *carrier_;
        return SmoothFunction(
            dom, [c, f](double x, std::size_t k) { return c.jet(x, k) * f.jet(x, k); }, flat,
            label);
      }
      default: {
        const SmoothFunction inner = base_->apply(f);
        return SmoothFunction(
            dom, [inner, f](double x, std::size_t k) { return f.jet(x, k) - inner.jet(x, k); },
            flat, label);
      }
    }
  }

 private:
  BlendOperator(OperatorKind kind, Direction dir, StepOrders orders, Interval interval,
                std::optional<SmoothFunction> carrier, std::shared_ptr<const BlendOperator> base)
      : kind_(kind),
        dir_(dir),
        orders_(orders),
        interval_(interval),
        carrier_(std::move(carrier)),
        base_(std::move(base)) {}

  OperatorKind kind_;
  Direction dir_;
  StepOrders orders_;
  Interval interval_;
  std::optional<SmoothFunction> carrier_;
  std::shared_ptr<const BlendOperator> base_;
};

inline SmoothFunction apply(const BlendOperator& op, const SmoothFunction& f) {
  return op.apply(f);
}

inline BlendOperator complement(const BlendOperator& op) { return op.complement(); }

/// sup over a uniform grid of |B(af + bg) - a B(f) - b B(g)|.
inline double linearity_check(const BlendOperator& op, const SmoothFunction& f,
                              const SmoothFunction& g, double alpha, double beta,
                              std::size_t grid) {
  if (grid < 2) throw std::invalid_argument("linearity_check: grid must be >= 2");
  const Interval& d = op.interval();
  const SmoothFunction fr = restrict_to(f, d), gr = restrict_to(g, d);
  const auto combined = op.apply(lincomb({{alpha, fr}, {beta, gr}}));
  const auto bf = op.apply(fr), bg = op.apply(gr);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = d.grid_point(i, grid);
    worst = std::max(worst,
                     std::abs(combined.value(x) - alpha * bf.value(x) - beta * bg.value(x)));
  }
  return worst;
}

/// Endpoint check of B(f) against the zero-and-preserve pattern.
struct BlendReport {
  std::size_t check_order = 0;
  Direction direction = Direction::leftward;
  std::vector<double> zero_end;      // raw jet of B(f) at the flattened end
  std::vector<double> keep_end;      // raw jet of B(f) at the preserved end
  std::vector<double> keep_target;   // raw jet of f at the preserved end
  double zero_defect = 0.0;          // max_k |B(f)^(k)| at the flattened end
  double keep_defect = 0.0;          // max_k |B(f)^(k) - f^(k)| / max(1, |f^(k)|)
  std::vector<double> zero_end_fd;   // one-sided finite-difference estimates
  std::vector<double> keep_end_fd;
  bool jet_passed = false;
  bool fd_passed = false;

  bool passed() const noexcept { return jet_passed && fd_passed; }
};

struct BlendCheckOptions {
  double value_tol = 1e-10;       // |B(f)(zero end)|
  double derivative_tol = 1e-9;   // other jet entries, relative to max(1, |f^(k)|)
  double fd_scale = 0.4;          // FD step scale, in units of the interval length
  bool relaxed_fd = false;        // expo-rational tolerance relaxation
};

/**
 * Jets of B(f) at both ends up to check_order, compared with zero at the
 * flattened end and with f's jet at the preserved end. The same comparison
 * is repeated with one-sided finite differences of B(f) (orders <= 6),
 * judged by the tolerance schedule relative to derivative_scale(B(f), k).
 */
inline BlendReport verify_blend(const BlendOperator& op, const SmoothFunction& f,
                                std::size_t check_order, const BlendCheckOptions& opt = {}) {
  const Interval& d = op.interval();
  const bool left = op.direction() == Direction::leftward;
  const double zero_x = left ? d.a() : d.b();
  const double keep_x = left ? d.b() : d.a();
  const auto g = op.apply(f);

  BlendReport r;
  r.check_order = check_order;
  r.direction = op.direction();
  r.zero_end = g.jet(zero_x, check_order).derivatives();
  r.keep_end = g.jet(keep_x, check_order).derivatives();
  r.keep_target = f.jet(keep_x, check_order).derivatives();
  const auto f_zero = f.jet(zero_x, check_order).derivatives();

  r.jet_passed = true;
  for (std::size_t k = 0; k <= check_order; ++k) {
    const double z = std::abs(r.zero_end[k]);
    const double zscale = k == 0 ? 1.0 : std::max(1.0, std::abs(f_zero[k]));
    r.zero_defect = std::max(r.zero_defect, z);
    if (z > (k == 0 ? opt.value_tol : opt.derivative_tol * zscale)) r.jet_passed = false;
    const double kscale = std::max(1.0, std::abs(r.keep_target[k]));
    const double dev = std::abs(r.keep_end[k] - r.keep_target[k]) / kscale;
    r.keep_defect = std::max(r.keep_defect, dev);
    if (dev > opt.derivative_tol) r.jet_passed = false;
  }

  const std::size_t fd_order = std::min(check_order, numerics::kMaxFdOrder);
  auto v = [&g](double x) { return g.value(x); };
  const double scale = opt.fd_scale * d.length();
  const auto zero_kind = left ? numerics::Stencil::forward : numerics::Stencil::backward;
  const auto keep_kind = left ? numerics::Stencil::backward : numerics::Stencil::forward;
  r.fd_passed = true;
  r.zero_end_fd.push_back(g.value(zero_x));
  r.keep_end_fd.push_back(g.value(keep_x));
  for (std::size_t k = 1; k <= fd_order; ++k) {
    const double ez = numerics::fd_derivative(v, zero_x, k, scale, zero_kind);
    const double ek = numerics::fd_derivative(v, keep_x, k, scale, keep_kind);
    r.zero_end_fd.push_back(ez);
    r.keep_end_fd.push_back(ek);
    const double tol = numerics::fd_tolerance(k, true, opt.relaxed_fd) * derivative_scale(g, k);
    if (std::abs(ez) > tol) r.fd_passed = false;
    if (std::abs(ek - r.keep_target[k]) > tol) r.fd_passed = false;
  }
  return r;
}

}  // namespace flatblend

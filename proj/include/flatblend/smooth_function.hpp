#pragma once

/**
 * @file smooth_function.hpp
 * @brief Type-erased handle to a differentiable function on a closed interval.
 *
 * A SmoothFunction is defined entirely by its jet evaluator; value(x) is
 * jet(x, 0)[0], so the two can never disagree. Flatness orders are declared
 * metadata set by whoever constructs the handle and are verified by tests,
 * never inferred.
 */

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "flatblend/jet.hpp"
#include "flatblend/types.hpp"

namespace flatblend {

class SmoothFunction {
 public:
  /// Returns the jet of order `order` at x (x already clamped into the domain).
  using JetFn = std::function<Jet(double x, std::size_t order)>;

  SmoothFunction(Interval domain, JetFn jet, StepOrders flat, std::string label)
      : impl_(std::make_shared<const Impl>(
            Impl{domain, std::move(jet), flat, std::move(label)})) {
    if (!impl_->jet) throw std::invalid_argument("SmoothFunction: empty jet evaluator");
  }

  /**
   * Builds a handle from a callable templated on the scalar type, evaluated
   * on Jet::variable(x, order). Use for closed-form expressions.
   */
  template <class F>
  static SmoothFunction from_expression(Interval domain, F expr, StepOrders flat,
                                        std::string label) {
    return SmoothFunction(
        domain, [expr](double x, std::size_t k) { return Jet(expr(Jet::variable(x, k))); },
        flat, std::move(label));
  }

  const Interval& domain() const noexcept { return impl_->domain; }
  StepOrders flat() const noexcept { return impl_->flat; }
  FlatOrder flat_left() const noexcept { return impl_->flat.left; }
  FlatOrder flat_right() const noexcept { return impl_->flat.right; }
  const std::string& label() const noexcept { return impl_->label; }

  /// Jet of the requested order; throws std::out_of_range outside the domain.
  Jet jet(double x, std::size_t order) const {
    if (!impl_->domain.contains(x)) {
      throw std::out_of_range("SmoothFunction '" + impl_->label + "': x = " +
                              std::to_string(x) + " outside [" +
                              std::to_string(impl_->domain.a()) + ", " +
                              std::to_string(impl_->domain.b()) + "]");
    }
    const double xc = impl_->domain.clamp(x);
    Jet j = impl_->jet(xc, order);
    if (j.order() < order) {
      throw std::length_error("SmoothFunction '" + impl_->label + "': jet order " +
                              std::to_string(j.order()) + " below requested " +
                              std::to_string(order));
    }
    if (j.order() > order) j = j.truncated(order);
    return j.with_basepoint(xc);
  }

  double value(double x) const { return jet(x, 0).value(); }
  double operator()(double x) const { return value(x); }

  /// Raw derivative f^(k)(x).
  double derivative(double x, std::size_t k) const { return jet(x, k).derivative(k); }

  /// Same handle with different declared orders or label.
  SmoothFunction with_flat(StepOrders flat) const {
    return SmoothFunction(impl_->domain, impl_->jet, flat, impl_->label);
  }
  SmoothFunction with_label(std::string label) const {
    return SmoothFunction(impl_->domain, impl_->jet, impl_->flat, std::move(label));
  }

  /// True when both refer to the very same constructed function object.
  bool same_handle(const SmoothFunction& other) const noexcept {
    return impl_ == other.impl_;
  }

  const JetFn& jet_fn() const noexcept { return impl_->jet; }

 private:
  struct Impl {
    Interval domain;
    JetFn jet;
    StepOrders flat;
    std::string label;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Constant function; flat to every order at both ends.
inline SmoothFunction constant_function(Interval domain, double c) {
  return SmoothFunction(
      domain, [c](double, std::size_t k) { return Jet::constant(c, k); },
      {FlatOrder::unbounded(), FlatOrder::unbounded()}, "const(" + std::to_string(c) + ")");
}

/// Restriction of f to a sub-interval. Declared flatness survives only at
/// endpoints shared with f's domain.
inline SmoothFunction restrict_to(const SmoothFunction& f, Interval sub) {
  if (!f.domain().contains(sub)) {
    throw std::invalid_argument("restrict_to: [" + std::to_string(sub.a()) + ", " +
                                std::to_string(sub.b()) + "] not inside the domain of '" +
                                f.label() + "'");
  }
  if (sub == f.domain()) return f;
  const StepOrders flat{sub.a() == f.domain().a() ? f.flat_left() : FlatOrder(0),
                        sub.b() == f.domain().b() ? f.flat_right() : FlatOrder(0)};
  return SmoothFunction(sub, f.jet_fn(), flat, f.label());
}

}  // namespace flatblend

#pragma once

/**
 * @file transitions.hpp
 * @brief Piecewise smooth transitions h = f | h0 | g and seam verification.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flatblend/flat_ends.hpp"
#include "flatblend/hermite.hpp"
#include "flatblend/jet.hpp"
#include "flatblend/numerics/finite_difference.hpp"
#include "flatblend/operators.hpp"
#include "flatblend/smooth_function.hpp"
#include "flatblend/types.hpp"

namespace flatblend {

/**
 * h(x) = f(x) for x < a0, h0(x) on [a0, b0], g(x) for x > b0. The seams
 * belong to the core branch.
 */
class PiecewiseTransition {
 public:
  PiecewiseTransition(SmoothFunction left, SmoothFunction core, SmoothFunction right,
                      StepOrders orders, std::string provenance)
      : left_(std::move(left)),
        core_(std::move(core)),
        right_(std::move(right)),
        outer_(left_.domain().a(), right_.domain().b()),
        orders_(orders),
        provenance_(std::move(provenance)) {
    const Interval& in = core_.domain();
    if (!(outer_.a() < in.a() && in.b() < outer_.b())) {
      throw std::invalid_argument("PiecewiseTransition: need a < a0 < b0 < b");
    }
    if (!left_.domain().contains(Interval(outer_.a(), in.b()))) {
      throw std::invalid_argument("PiecewiseTransition: left branch '" + left_.label() +
                                  "' must cover [a, b0]");
    }
    if (!right_.domain().contains(Interval(in.a(), outer_.b()))) {
      throw std::invalid_argument("PiecewiseTransition: right branch '" + right_.label() +
                                  "' must cover [a0, b]");
    }
  }

  const Interval& outer() const noexcept { return outer_; }
  const Interval& inner() const noexcept { return core_.domain(); }
  const SmoothFunction& left_branch() const noexcept { return left_; }
  const SmoothFunction& core() const noexcept { return core_; }
  const SmoothFunction& right_branch() const noexcept { return right_; }
  StepOrders orders() const noexcept { return orders_; }
  const std::string& provenance() const noexcept { return provenance_; }

  Jet jet(double x, std::size_t k) const {
    if (!outer_.contains(x)) {
      throw std::out_of_range("PiecewiseTransition: x = " + std::to_string(x) +
                              " outside the outer interval");
    }
    if (x < inner().a()) return left_.jet(x, k);
    if (x > inner().b()) return right_.jet(x, k);
    return core_.jet(x, k);
  }
  double value(double x) const { return jet(x, 0).value(); }
  double operator()(double x) const { return value(x); }

  /// The whole transition as a handle on [a, b].
  SmoothFunction as_function() const {
    const PiecewiseTransition self = *this;
    return SmoothFunction(
        outer_, [self](double x, std::size_t k) { return self.jet(x, k); },
        {left_.flat_left(), right_.flat_right()}, "transition(" + provenance_ + ")");
  }

 private:
  SmoothFunction left_;
  SmoothFunction core_;
  SmoothFunction right_;
  Interval outer_;
  StepOrders orders_;
  std::string provenance_;
};

namespace detail {

inline void require_operator_pair(const BlendOperator& bl, const BlendOperator& br) {
  if (bl.direction() != Direction::leftward || br.direction() != Direction::rightward) {
    throw std::invalid_argument("transition_from_blends: need a leftward and a rightward operator");
  }
  if (!(bl.interval() == br.interval())) {
    throw std::invalid_argument("transition_from_blends: operator intervals differ");
  }
  if (!(bl.orders() == br.orders())) {
    throw std::invalid_argument("transition_from_blends: operator orders differ (" +
                                bl.orders().to_string() + " vs " + br.orders().to_string() + ")");
  }
}

}  // namespace detail

/// Core h0 = BR(f|inner) + BL(g|inner).
inline PiecewiseTransition transition_from_blends(const BlendOperator& bl, const BlendOperator& br,
                                                  const SmoothFunction& f,
                                                  const SmoothFunction& g) {
  detail::require_operator_pair(bl, br);
  const Interval inner = bl.interval();
  const SmoothFunction f0 = br.apply(restrict_to(f, inner));
  const SmoothFunction g0 = bl.apply(restrict_to(g, inner));
  SmoothFunction core(
      inner, [f0, g0](double x, std::size_t k) { return f0.jet(x, k) + g0.jet(x, k); },
      {0, 0}, "h0");
  return PiecewiseTransition(f, core, g, bl.orders(),
                             "blends: L=" + bl.describe() + "; R=" + br.describe());
}

/// transition_from_blends(B, I - B, f, g) for a leftward B.
inline PiecewiseTransition transition_from_single(const BlendOperator& b, const SmoothFunction& f,
                                                  const SmoothFunction& g) {
  auto t = transition_from_blends(b, b.complement(), f, g);
  return PiecewiseTransition(t.left_branch(), t.core(), t.right_branch(), t.orders(),
                             "single: " + b.describe());
}

/// Core is the Hermite interpolant of f's l-jet at a0 and g's r-jet at b0.
inline PiecewiseTransition transition_hermite(const SmoothFunction& f, const SmoothFunction& g,
                                              StepOrders orders, const Interval& inner) {
  if (!orders.finite()) {
    throw std::invalid_argument("transition_hermite: orders must be finite");
  }
  HermiteSpec spec;
  spec.left = {inner.a(), f.jet(inner.a(), orders.left.value()).derivatives()};
  spec.right = {inner.b(), g.jet(inner.b(), orders.right.value()).derivatives()};
  return PiecewiseTransition(f, hermite_interpolant(spec).with_label("h0"), g, orders,
                             "hermite " + orders.to_string());
}

struct SeamRow {
  double point = 0.0;
  std::size_t order = 0;
  bool declared = false;        // order within the declared seam order
  double jet_mismatch = 0.0;    // |h0^(k) - branch^(k)| / max(1, |branch^(k)|)
  double fd_mismatch = 0.0;     // one-sided FD jump of h over its derivative scale
  double fd_tolerance = 0.0;    // schedule tolerance for this order
};

struct SeamReport {
  std::vector<SeamRow> rows;
  double jet_tolerance = 1e-7;

  double max_declared_jet_mismatch() const {
    double m = 0.0;
    for (const auto& r : rows) {
      if (r.declared) m = std::max(m, r.jet_mismatch);
    }
    return m;
  }
  bool passed() const {
    for (const auto& r : rows) {
      if (!r.declared) continue;
      if (r.jet_mismatch >= jet_tolerance || r.fd_mismatch > r.fd_tolerance) return false;
    }
    return true;
  }
};

struct SeamOptions {
  double fd_scale = 0.4;    // FD step scale in units of the inner interval length
  bool relaxed_fd = false;  // expo-rational tolerance relaxation
};

/**
 * Derivative mismatches at a0 and b0 for orders 0..check_order: exact jets
 * of core against the adjacent branch, and one-sided finite-difference
 * jumps of h (orders <= 6) relative to the larger derivative_scale of core
 * and branch on the inner interval. Rows above the declared seam order are
 * reported but do not affect passed().
 */
inline SeamReport seam_report(const PiecewiseTransition& t, std::size_t check_order,
                              const SeamOptions& opt = {}) {
  SeamReport rep;
  const Interval& in = t.inner();
  auto h = [&t](double x) { return t.value(x); };
  const double scale = opt.fd_scale * in.length();
  struct Seam {
    double x;
    const SmoothFunction* branch;
    FlatOrder declared;
  };
  const Seam seams[] = {{in.a(), &t.left_branch(), t.orders().left},
                        {in.b(), &t.right_branch(), t.orders().right}};
  for (const auto& s : seams) {
    const auto core = t.core().jet(s.x, check_order).derivatives();
    const auto branch = s.branch->jet(s.x, check_order).derivatives();
    const std::size_t fd_order = std::min(check_order, numerics::kMaxFdOrder);
    const auto jumps = numerics::one_sided_jumps(h, s.x, fd_order, scale);
    const SmoothFunction branch_in = restrict_to(*s.branch, in);
    for (std::size_t k = 0; k <= check_order; ++k) {
      SeamRow row;
      row.point = s.x;
      row.order = k;
      row.declared = s.declared.covers(k);
      const double mag = std::max(1.0, std::abs(branch[k]));
      row.jet_mismatch = std::abs(core[k] - branch[k]) / mag;
      if (k <= fd_order) {
        const double fd_mag =
            std::max(derivative_scale(t.core(), k), derivative_scale(branch_in, k));
        row.fd_mismatch = jumps[k] / fd_mag;
        row.fd_tolerance = k == 0 ? 1e-8 : numerics::fd_tolerance(k, true, opt.relaxed_fd);
      }
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace flatblend

#pragma once

/**
 * @file types.hpp
 * @brief Small value types shared by every module: closed intervals,
 *        flatness orders (finite or unbounded), and endpoint derivative data.
 */

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace flatblend {

/// Closed interval [a, b] with a < b.
class Interval {
 public:
  Interval(double a, double b) : a_(a), b_(b) {
    if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b)) {
      throw std::invalid_argument("Interval requires finite a < b, got [" +
                                  std::to_string(a) + ", " +
                                  std::to_string(b) + "]");
    }
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  double midpoint() const noexcept { return 0.5 * (a_ + b_); }

  /// Absolute slack used for membership tests; scaled to the interval size.
  double slack() const noexcept {
    return 1e-12 * std::max({1.0, std::abs(a_), std::abs(b_)});
  }

  bool contains(double x) const noexcept {
    return x >= a_ - slack() && x <= b_ + slack();
  }
  bool contains(const Interval& other) const noexcept {
    return contains(other.a_) && contains(other.b_);
  }
  double clamp(double x) const noexcept { return std::clamp(x, a_, b_); }

  /// Node i of a uniform grid with n >= 2 points, endpoints included exactly.
  double grid_point(std::size_t i, std::size_t n) const noexcept {
    if (i == 0) return a_;
    if (i + 1 == n) return b_;
    return a_ + length() * static_cast<double>(i) / static_cast<double>(n - 1);
  }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

/// Order of flatness at one end: a non-negative integer or "unbounded".
class FlatOrder {
 public:
  constexpr FlatOrder() noexcept = default;
  constexpr FlatOrder(std::size_t n) noexcept : value_(n) {}  // NOLINT: implicit by design of call sites

  static constexpr FlatOrder unbounded() noexcept {
    FlatOrder o;
    o.unbounded_ = true;
    return o;
  }

  constexpr bool is_finite() const noexcept { return !unbounded_; }
  constexpr bool is_unbounded() const noexcept { return unbounded_; }

  std::size_t value() const {
    if (unbounded_) throw std::logic_error("FlatOrder::value on an unbounded order");
    return value_;
  }

  /// True when derivatives 1..k are covered by this order.
  constexpr bool covers(std::size_t k) const noexcept {
    return unbounded_ || k <= value_;
  }

  /// Finite order, or `cap` when unbounded.
  constexpr std::size_t capped(std::size_t cap) const noexcept {
    return unbounded_ ? cap : std::min(value_, cap);
  }

  std::string to_string() const {
    return unbounded_ ? std::string("inf") : std::to_string(value_);
  }

  friend constexpr bool operator==(const FlatOrder& x, const FlatOrder& y) noexcept {
    if (x.unbounded_ || y.unbounded_) return x.unbounded_ == y.unbounded_;
    return x.value_ == y.value_;
  }
  friend constexpr std::strong_ordering operator<=>(const FlatOrder& x,
                                                    const FlatOrder& y) noexcept {
    if (x.unbounded_ && y.unbounded_) return std::strong_ordering::equal;
    if (x.unbounded_) return std::strong_ordering::greater;
    if (y.unbounded_) return std::strong_ordering::less;
    return x.value_ <=> y.value_;
  }

 private:
  std::size_t value_ = 0;
  bool unbounded_ = false;
};

inline constexpr FlatOrder min(FlatOrder x, FlatOrder y) noexcept {
  return (y < x) ? y : x;
}

/// Flatness orders (left, right) of a step function or blend operator.
struct StepOrders {
  FlatOrder left;
  FlatOrder right;

  constexpr bool finite() const noexcept {
    return left.is_finite() && right.is_finite();
  }
  StepOrders swapped() const noexcept { return {right, left}; }
  std::string to_string() const {
    return "(" + left.to_string() + "," + right.to_string() + ")";
  }

  friend constexpr bool operator==(const StepOrders&, const StepOrders&) = default;
};

inline StepOrders min(const StepOrders& x, const StepOrders& y) noexcept {
  return {min(x.left, y.left), min(x.right, y.right)};
}

/// Raw derivative data f(p), f'(p), ..., f^(n)(p) at a point p.
struct EndpointJet {
  double point = 0.0;
  std::vector<double> derivatives;

  std::size_t order() const {
    if (derivatives.empty()) throw std::invalid_argument("EndpointJet has no entries");
    return derivatives.size() - 1;
  }
};

}  // namespace flatblend

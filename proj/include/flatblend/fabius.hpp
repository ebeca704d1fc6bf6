#pragma once

/**
 * @file fabius.hpp
 * @brief Numerical Fabius function from its self-similar integral equation.
 *
 * The table is the fixed point of
 *   T(x) = int_0^{2x} T                 for x <= 1/2,
 *   T(x) = int_{2x-1}^1 T + 2x - 1      for x >  1/2,
 * iterated from T(x) = x on a uniform dyadic grid with cumulative
 * trapezoid sums. Because 2x and 2x-1 land on grid nodes, every update
 * reads the cumulative integral at a node, with no interpolation.
 * Between nodes the table is evaluated by monotone cubic (PCHIP)
 * interpolation. Derivatives use T'(x) = 2T(2x) on [0, 1/2] and
 * T'(x) = 2 - 2T(2x-1) on (1/2, 1], recursively.
 */

#include <cmath>

// Boost 1.74's pchip calls isnan unqualified; make it visible there.
namespace boost::math::interpolators {
using std::isnan;
}

#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatblend/jet.hpp"
#include "flatblend/smooth_function.hpp"
#include "flatblend/step_functions.hpp"

namespace flatblend {

/// Raised when a fixed-point iteration hits its cap before the tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FabiusOptions {
  double tolerance = 1e-10;
  std::size_t grid_size = std::size_t{1} << 14;  // number of grid intervals
  std::size_t max_iterations = 1000;
};

/// Converged nodal values on x_i = i / grid_size, i = 0..grid_size.
struct FabiusTable {
  std::vector<double> nodes;
  std::vector<double> values;
  std::size_t iterations = 0;
  double last_change = 0.0;
};

inline FabiusTable solve_fabius(const FabiusOptions& opt) {
  const std::size_t n = opt.grid_size;
  if (!(opt.tolerance > 0.0)) throw std::invalid_argument("fabius: tolerance must be > 0");
  if (n < 2 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("fabius: grid_size must be a power of two >= 2");
  }
  const double h = 1.0 / static_cast<double>(n);
  FabiusTable t;
  t.nodes.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t.nodes[i] = static_cast<double>(i) * h;
  std::vector<double> cur(t.nodes), next(n + 1), cum(n + 1);

  for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
    cum[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) cum[i] = cum[i - 1] + 0.5 * h * (cur[i - 1] + cur[i]);
    const std::size_t half = n / 2;
    double change = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      if (i <= half) {
        next[i] = cum[2 * i];
      } else {
        const std::size_t lo = 2 * i - n;
        next[i] = (cum[n] - cum[lo]) + static_cast<double>(lo) * h;
      }
      change = std::max(change, std::abs(next[i] - cur[i]));
    }
    cur.swap(next);
    t.iterations = it;
    t.last_change = change;
    if (change < opt.tolerance) {
      t.values = std::move(cur);
      return t;
    }
  }
  throw ConvergenceError("fabius: no convergence to " + std::to_string(opt.tolerance) +
                         " within " + std::to_string(opt.max_iterations) +
                         " iterations (last change " + std::to_string(t.last_change) + ")");
}

namespace detail {

class FabiusEvaluator {
 public:
  explicit FabiusEvaluator(const FabiusTable& table) : values_(table.values) {
    // PCHIP needs four nodes; coarser tables fall back to linear interpolation.
    if (table.nodes.size() >= 4) {
      interp_ = std::make_unique<Pchip>(std::vector<double>(table.nodes),
                                        std::vector<double>(table.values), 0.0, 0.0);
    }
  }

  double value(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (interp_) return (*interp_)(x);
    const double n = static_cast<double>(values_.size() - 1);
    const auto i = std::min(static_cast<std::size_t>(x * n), values_.size() - 2);
    const double t = x * n - static_cast<double>(i);
    return (1.0 - t) * values_[i] + t * values_[i + 1];
  }

  /// Raw derivative of order k via the functional equation.
  double derivative(double x, std::size_t k) const {
    if (k == 0) return value(x);
    const double p = std::ldexp(1.0, static_cast<int>(k));
    if (x <= 0.5) return p * derivative(2.0 * x, k - 1);
    if (k == 1) return 2.0 - 2.0 * value(2.0 * x - 1.0);
    return -p * derivative(2.0 * x - 1.0, k - 1);
  }

 private:
  using Pchip = boost::math::interpolators::pchip<std::vector<double>>;
  std::vector<double> values_;
  std::unique_ptr<Pchip> interp_;
};

}  // namespace detail

/// Fabius function on [0, 1] from a converged table; flat to every order.
inline SmoothFunction fabius(const FabiusTable& table) {
  auto eval = std::make_shared<const detail::FabiusEvaluator>(table);
  return SmoothFunction(
      kUnitInterval,
      [eval](double x, std::size_t k) {
        std::vector<double> d(k + 1);
        for (std::size_t i = 0; i <= k; ++i) d[i] = eval->derivative(x, i);
        return Jet::from_derivatives(d, x);
      },
      {FlatOrder::unbounded(), FlatOrder::unbounded()}, "Fabius");
}

/// Solves the table and wraps it; throws ConvergenceError on failure.
inline SmoothFunction fabius(double tolerance, std::size_t grid_size) {
  FabiusOptions opt;
  opt.tolerance = tolerance;
  opt.grid_size = grid_size;
  return fabius(solve_fabius(opt));
}

}  // namespace flatblend

#pragma once

/**
 * @file verification.hpp
 * @brief Named verification suites over the step families, closure
 *        operations, Hermite interpolation, exact identities and transition
 *        seams. Each suite returns a SuiteReport of individual checks.
 */

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatblend/catalog.hpp"
#include "flatblend/fabius.hpp"
#include "flatblend/flat_ends.hpp"
#include "flatblend/hermite.hpp"
#include "flatblend/numerics/finite_difference.hpp"
#include "flatblend/numerics/quadrature.hpp"
#include "flatblend/numerics/rational.hpp"
#include "flatblend/step_functions.hpp"
#include "flatblend/transitions.hpp"

namespace flatblend::verify {

/// One measured quantity against its tolerance. passed iff value <= tolerance.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
  }
  /// NaN values fail.
  void add(std::string name, double value, double tolerance, std::string detail = {}) {
    checks.push_back({std::move(name), value, tolerance, value <= tolerance, std::move(detail)});
  }
  /// Boolean outcome recorded as value 0 (pass) or 1 (fail) against tolerance 0.
  void add_flag(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok ? 0.0 : 1.0, 0.0, ok, std::move(detail)});
  }
  void append(const SuiteReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

inline nlohmann::ordered_json to_json(const SuiteReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["passed"] = r.passed();
  j["failures"] = r.failures();
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    // JSON has no NaN; a non-finite measurement is reported as null.
    if (std::isfinite(c.value)) e["value"] = c.value; else e["value"] = nullptr;
    e["tolerance"] = c.tolerance;
    e["passed"] = c.passed;
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  return j;
}

/// Fixed-width table: status, check name, value, tolerance, detail.
inline void print_table(std::ostream& out, const SuiteReport& r) {
  std::size_t width = 5;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  out << "suite " << r.suite << ": " << r.checks.size() << " checks, " << r.failures()
      << " failed\n";
  out << std::left << std::setw(6) << "status" << ' ' << std::setw(static_cast<int>(width))
      << "check" << "  " << std::setw(12) << "value" << "  " << std::setw(10) << "tolerance"
      << '\n';
  for (const auto& c : r.checks) {
    std::ostringstream v, t;
    v << std::setprecision(4) << std::scientific << c.value;
    t << std::setprecision(1) << std::scientific << c.tolerance;
    out << std::left << std::setw(6) << (c.passed ? "PASS" : "FAIL") << ' '
        << std::setw(static_cast<int>(width)) << c.name << "  " << std::setw(12) << v.str()
        << "  " << std::setw(10) << t.str();
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
  out << (r.passed() ? "PASS" : "FAIL") << '\n';
}

/// Shared tolerances.
inline constexpr double kEndpointValueTol = 1e-14;
inline constexpr double kFlatnessTol = 1e-8;
inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kCompositionSymmetryTol = 1e-10;
inline constexpr std::size_t kMonotoneGrid = 1001;

namespace detail {

inline std::string orders_tag(std::size_t l, std::size_t r) {
  return "(" + std::to_string(l) + "," + std::to_string(r) + ")";
}

/// Exact and finite-difference flatness of a step at the requested orders.
inline void check_step(SuiteReport& rep, const SmoothFunction& s, std::size_t l, std::size_t r,
                       bool relaxed, std::size_t fd_cap = numerics::kMaxFdOrder) {
  const std::string tag = s.label() + " at " + orders_tag(l, r);
  rep.add(tag + " value(0)", std::abs(s.value(0.0)), kEndpointValueTol);
  rep.add(tag + " value(1)", std::abs(s.value(1.0) - 1.0), kEndpointValueTol);
  const auto exact = flatness_check(s, l, r, kFlatnessTol);
  rep.add(tag + " jet flatness", std::max(exact.left_defect, exact.right_defect), kFlatnessTol);
  const std::size_t fl = std::min(l, fd_cap), fr = std::min(r, fd_cap);
  const auto fd = flatness_check_fd(s, fl, fr, 1.0, relaxed);
  std::ostringstream d;
  d << "orders " << orders_tag(fl, fr) << ", relative defects " << fd.left_defect << ", "
    << fd.right_defect;
  rep.add_flag(tag + " fd flatness", fd.passed, d.str());
}

}  // namespace detail

// ---------------------------------------------------------------- flatness

struct FlatnessOptions {
  catalog::Family family = catalog::Family::beta;
  std::optional<StepOrders> orders;     // one step; else a sweep
  std::size_t max_order = 4;            // sweep bound for beta and rational
  std::optional<unsigned> m;            // trig: one m; else m = 0..max_m
  unsigned max_m = 3;
  std::optional<std::size_t> check_order;  // overrides the declared orders
};

/// Orders checked for unbounded flatness when none are requested.
inline constexpr std::size_t kUnboundedCheckOrder = 6;

/// FD cross-check cap for the Fabius function: its n-th derivative grows
/// like 2^(n(n+1)/2), so stencil truncation error swamps orders above 4.
inline constexpr std::size_t kFabiusFdOrder = 4;

/**
 * Each step in the selection is checked at its declared orders (or at
 * check_order at both ends): endpoint values, exact-jet flatness and a
 * one-sided finite-difference cross-check up to order 6.
 */
inline SuiteReport flatness_suite(const FlatnessOptions& opt) {
  SuiteReport rep{"flatness", {}};
  auto run = [&](const SmoothFunction& s, bool relaxed,
                 std::size_t fd_cap = numerics::kMaxFdOrder) {
    const auto o = s.flat();
    const std::size_t l = opt.check_order.value_or(o.left.is_finite() ? o.left.value()
                                                                      : kUnboundedCheckOrder);
    const std::size_t r = opt.check_order.value_or(o.right.is_finite() ? o.right.value()
                                                                       : kUnboundedCheckOrder);
    detail::check_step(rep, s, l, r, relaxed, fd_cap);
  };
  switch (opt.family) {
    case catalog::Family::beta:
    case catalog::Family::rational: {
      auto make = [&](std::size_t l, std::size_t r) {
        return opt.family == catalog::Family::beta ? beta_step(l, r) : rational_step(l, r);
      };
      if (opt.orders) {
        run(make(opt.orders->left.value(), opt.orders->right.value()), false);
      } else {
        for (std::size_t l = 1; l <= opt.max_order; ++l) {
          for (std::size_t r = 1; r <= opt.max_order; ++r) run(make(l, r), false);
        }
      }
      break;
    }
    case catalog::Family::trig:
      if (opt.m) {
        run(trig_step(*opt.m), false);
      } else {
        for (unsigned m = 0; m <= opt.max_m; ++m) run(trig_step(m), false);
      }
      break;
    case catalog::Family::expo: run(expo_rational_step(), true); break;
    case catalog::Family::fabius:
      run(fabius(solve_fabius(FabiusOptions{})), false, kFabiusFdOrder);
      break;
  }
  return rep;
}

// ---------------------------------------------------------------- symmetry

struct SymmetryOptions {
  unsigned max_m = 5;
  std::size_t max_order = 6;
  std::size_t grid_size = 1001;
};

/**
 * Point symmetry u(x) + u(1-x) = 1 of the symmetric families (T_m, B_{l,l},
 * R_{l,l}, Fabius), of compositions of symmetric steps, and the symmetric
 * step criterion (symmetry, left flatness and monotonicity imply right
 * flatness).
 */
inline SuiteReport symmetry_suite(const SymmetryOptions& opt) {
  SuiteReport rep{"symmetry", {}};
  std::vector<SmoothFunction> steps;
  for (unsigned m = 0; m <= opt.max_m; ++m) steps.push_back(trig_step(m));
  for (std::size_t l = 1; l <= opt.max_order; ++l) {
    steps.push_back(beta_step(l, l));
    steps.push_back(rational_step(l, l));
  }
  for (const auto& s : steps) {
    rep.add(s.label() + " symmetry", symmetry_check(s, opt.grid_size).max_defect, kSymmetryTol);
  }
  const auto fab = fabius(solve_fabius(FabiusOptions{}));
  rep.add(fab.label() + " symmetry", symmetry_check(fab, opt.grid_size).max_defect, 1e-8);
  const SmoothFunction inner[] = {beta_step(2, 2), trig_step(1), rational_step(3, 3)};
  for (const auto& u : inner) {
    for (const auto& v : inner) {
      const auto c = change_of_interval(u, v);
      rep.add(c.label() + " symmetry", symmetry_check(c, opt.grid_size).max_defect,
              kCompositionSymmetryTol);
    }
  }
  for (unsigned m = 0; m <= std::min(opt.max_m, 3u); ++m) {
    const auto t = trig_step(m);
    rep.add_flag(t.label() + " symmetric-step criterion",
                 validate_symmetric_step(t, 2 * m + 1, opt.grid_size).passed());
  }
  for (std::size_t l = 1; l <= std::min<std::size_t>(opt.max_order, 4); ++l) {
    const auto b = beta_step(l, l);
    rep.add_flag(b.label() + " symmetric-step criterion",
                 validate_symmetric_step(b, l, opt.grid_size).passed());
  }
  return rep;
}

// ----------------------------------------------------------------- closure

struct ClosureOptions {
  std::size_t max_order = 4;
  std::size_t grid_size = kMonotoneGrid;
};

/// Step functions of class (l, r) used by the closure suite.
inline std::vector<SmoothFunction> closure_family(std::size_t l, std::size_t r) {
  std::vector<SmoothFunction> out{beta_step(l, r), rational_step(l, r)};
  if (l == r) out.push_back(trig_step(static_cast<unsigned>(l / 2)));  // flat to 2m+1 >= l
  return out;
}

/**
 * Products h f and compositions h(f) of steps of class (l, r): endpoint
 * mapping, flatness at (l, r) and monotone grid. Results are aggregated per
 * operation and class (worst value over all pairs).
 */
inline SuiteReport closure_suite(const ClosureOptions& opt) {
  SuiteReport rep{"closure", {}};
  for (std::size_t l = 1; l <= opt.max_order; ++l) {
    for (std::size_t r = 1; r <= opt.max_order; ++r) {
      const auto fam = closure_family(l, r);
      for (const bool compose : {false, true}) {
        double ends = 0.0, flat = 0.0;
        std::string mono_fail;
        for (const auto& h : fam) {
          for (const auto& f : fam) {
            const auto p = compose ? change_of_interval(h, f) : product(h, f);
            ends = std::max({ends, std::abs(p.value(0.0)), std::abs(p.value(1.0) - 1.0)});
            const auto fr = flatness_check(p, l, r);
            flat = std::max({flat, fr.left_defect, fr.right_defect});
            const auto mr = monotone_check(p, opt.grid_size);
            if (!mr.passed && mono_fail.empty()) {
              mono_fail = p.label() + " at x=" + std::to_string(mr.first_failure);
            }
          }
        }
        const std::string tag =
            std::string(compose ? "composition " : "product ") + detail::orders_tag(l, r);
        rep.add(tag + " endpoints", ends, compose ? 1e-12 : kEndpointValueTol);
        rep.add(tag + " flatness", flat, kFlatnessTol);
        rep.add_flag(tag + " monotone", mono_fail.empty(), mono_fail);
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------- hermite-oracle

struct HermiteOracleOptions {
  std::size_t max_order = 5;
  std::uint64_t seed = 20261016;
  std::size_t interior_points = 20;
};

/**
 * Random endpoint jets in [-1, 1] on random intervals of length [0.5, 3]:
 * the closed-form interpolant reproduces the jets and agrees with the
 * confluent linear-system oracle at interior points.
 */
inline SuiteReport hermite_oracle_suite(const HermiteOracleOptions& opt) {
  SuiteReport rep{"hermite-oracle", {}};
  if (2 * opt.max_order > kHermiteOracleMaxOrder) {
    throw std::invalid_argument("hermite-oracle: max order " + std::to_string(opt.max_order) +
                                " exceeds the oracle bound");
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0), len(0.5, 3.0), start(-2.0, 2.0);
  for (std::size_t l = 0; l <= opt.max_order; ++l) {
    for (std::size_t r = 0; r <= opt.max_order; ++r) {
      HermiteSpec s;
      s.left.point = start(rng);
      s.right.point = s.left.point + len(rng);
      for (std::size_t i = 0; i <= l; ++i) s.left.derivatives.push_back(unit(rng));
      for (std::size_t i = 0; i <= r; ++i) s.right.derivatives.push_back(unit(rng));
      const auto h = hermite_interpolant(s);
      const auto jl = h.jet(s.left.point, l).derivatives();
      const auto jr = h.jet(s.right.point, r).derivatives();
      double ends = 0.0;
      for (std::size_t k = 0; k <= l; ++k) ends = std::max(ends, std::abs(jl[k] - s.left.derivatives[k]));
      for (std::size_t k = 0; k <= r; ++k) ends = std::max(ends, std::abs(jr[k] - s.right.derivatives[k]));
      const auto c = hermite_oracle(s);
      const Interval dom = s.interval();
      double interior = 0.0;
      for (std::size_t i = 1; i <= opt.interior_points; ++i) {
        const double x = dom.grid_point(i, opt.interior_points + 2);
        interior = std::max(interior, std::abs(h.value(x) - eval_xi_polynomial(c, dom, x)));
      }
      const std::string tag = "hermite " + detail::orders_tag(l, r);
      rep.add(tag + " endpoint jets", ends, 1e-9);
      rep.add(tag + " oracle agreement", interior, 1e-8);
    }
  }
  return rep;
}

// ---------------------------------------------------------------- trig-ode

struct TrigOdeOptions {
  std::optional<unsigned> m;  // one m; else 0..max_m
  unsigned max_m = 3;
};

/**
 * For each T_m: relative ODE residual |L_m[T_m] - c_m| / c_m, the boundary
 * pattern (derivatives 1..2m+1 vanish at both ends, order 2m+2 does not),
 * point symmetry on 1000 intervals, and agreement of the cosine expansion
 * with the quadrature of the normalized sine power.
 */
inline SuiteReport trig_ode_suite(const TrigOdeOptions& opt) {
  SuiteReport rep{"trig-ode", {}};
  std::vector<unsigned> ms;
  if (opt.m) {
    ms.push_back(*opt.m);
  } else {
    for (unsigned m = 0; m <= opt.max_m; ++m) ms.push_back(m);
  }
  std::vector<double> xs;
  for (int i = 1; i < 50; ++i) xs.push_back(i / 50.0);
  for (unsigned m : ms) {
    const auto t = trig_step(m);
    const std::string tag = t.label();
    rep.add(tag + " ode residual", ode_residual(m, xs) / trig_ode_constant(m), 1e-6);
    const std::size_t n = 2 * m + 1;
    const auto j0 = t.jet(0.0, n + 1).derivatives();
    const auto j1 = t.jet(1.0, n + 1).derivatives();
    double flat = 0.0;
    for (std::size_t k = 1; k <= n; ++k) flat = std::max({flat, std::abs(j0[k]), std::abs(j1[k])});
    rep.add(tag + " boundary pattern", flat, kFlatnessTol);
    rep.add_flag(tag + " first nonzero derivative at order " + std::to_string(n + 1),
                 std::abs(j0[n + 1]) > 1e-3 && std::abs(j1[n + 1]) > 1e-3);
    double sym = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double x = i / 1000.0;
      sym = std::max(sym, std::abs(t.value(x) + t.value(1.0 - x) - 1.0));
    }
    rep.add(tag + " symmetry", sym, kSymmetryTol);
    auto w = [m](double s) { return std::pow(std::sin(std::numbers::pi * s), 2.0 * m + 1.0); };
    const double total = numerics::integrate(w, kUnitInterval);
    double quad = 0.0;
    for (double x : {0.05, 0.25, 0.4, 0.5, 0.77, 0.95}) {
      quad = std::max(quad, std::abs(t.value(x) - numerics::integrate(w, Interval(0.0, x)) / total));
    }
    rep.add(tag + " cosine expansion vs quadrature", quad, 1e-10);
  }
  return rep;
}

// ---------------------------------------------------------------- binomial

struct BinomialOptions {
  unsigned max_m = 10;
};

/**
 * Exact rational arithmetic: the odd-power binomial sums vanish for
 * k = 1..m, and the cosine weights alpha_j = -a_{m,j} / (2 a_m) satisfy
 * sum alpha_j = -1/2 and the even-moment equations. Values are counts of
 * nonzero residuals.
 */
inline SuiteReport binomial_suite(const BinomialOptions& opt) {
  if (opt.max_m > kMaxTrigM) {
    throw std::invalid_argument("binomial: max m " + std::to_string(opt.max_m) +
                                " exceeds " + std::to_string(kMaxTrigM));
  }
  SuiteReport rep{"binomial", {}};
  for (unsigned m = 1; m <= opt.max_m; ++m) {
    const auto b = numerics::binomial_identity_check(m);
    const auto nonzero = std::count_if(b.sums.begin(), b.sums.end(), [](const auto& s) { return s != 0; });
    rep.add("binomial sums m=" + std::to_string(m), static_cast<double>(nonzero), 0.0);
  }
  for (unsigned m = 0; m <= opt.max_m; ++m) {
    const auto o = olofsen_check(trig_coefficients(m));
    std::size_t bad = o.alpha_sum == numerics::Rational(-1, 2) ? 0 : 1;
    for (const auto& q : o.moments) bad += q != 0 ? 1 : 0;
    rep.add("cosine weight system m=" + std::to_string(m), static_cast<double>(bad), 0.0);
  }
  return rep;
}

// ------------------------------------------------------------------- seams

/// Seam and branch checks for one transition at check_order.
inline SuiteReport seam_checks(const PiecewiseTransition& t, std::size_t check_order,
                               bool relaxed_fd = false, const std::string& name = {},
                               std::size_t grid = 1001) {
  SuiteReport rep{"seams", {}};
  SeamOptions so;
  so.relaxed_fd = relaxed_fd;
  const auto s = seam_report(t, check_order, so);
  double fd_ratio = 0.0;
  for (const auto& row : s.rows) {
    if (row.declared && row.fd_tolerance > 0.0) {
      fd_ratio = std::max(fd_ratio, row.fd_mismatch / row.fd_tolerance);
    }
  }
  const std::string tag = name.empty() ? t.provenance() : name;
  rep.add(tag + " seam jets", s.max_declared_jet_mismatch(), s.jet_tolerance);
  rep.add(tag + " seam fd (ratio to tolerance)", fd_ratio, 1.0);
  const Interval& out = t.outer();
  bool exact = true;
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = out.grid_point(i, grid);
    if (x < t.inner().a() && t.value(x) != t.left_branch().value(x)) exact = false;
    if (x > t.inner().b() && t.value(x) != t.right_branch().value(x)) exact = false;
  }
  rep.add_flag(tag + " branch exactness", exact);
  return rep;
}

struct SeamBatteryOptions {
  std::size_t max_order = 4;
};

/**
 * All three constructors (single blend, blend pair, Hermite core) with
 * Hermite and multiplicative (R, expo-rational) operators on [1, 5] with
 * core [2, 4], over a battery of branch pairs, checked up to min(l, r).
 */
inline SuiteReport seam_battery(const SeamBatteryOptions& opt) {
  SuiteReport rep{"seams", {}};
  const Interval outer(1.0, 5.0), inner(2.0, 4.0);
  const std::vector<std::pair<SmoothFunction, SmoothFunction>> pairs{
      {catalog::sine(outer, 1.0), catalog::exponential(outer, 0.5)},
      {catalog::polynomial(outer, {1.0, 0.5, -0.25}), catalog::cosine(outer, 2.0)},
      {constant_function(outer, 0.0), catalog::blend_example(outer)}};
  for (std::size_t l = 1; l <= opt.max_order; ++l) {
    for (std::size_t r = 1; r <= opt.max_order; ++r) {
      const std::size_t order = std::min(l, r);
      const auto hl = BlendOperator::hermite(Direction::leftward, {l, r}, inner);
      const auto hr = BlendOperator::hermite(Direction::rightward, {l, r}, inner);
      const auto m = BlendOperator::from_step(Direction::leftward, rational_step(l, r), inner);
      const auto e = BlendOperator::from_step(Direction::leftward, expo_rational_step(), inner,
                                              StepOrders{l, r});
      for (const auto& [f, g] : pairs) {
        auto run = [&](const PiecewiseTransition& t, bool relaxed) {
          rep.append(seam_checks(t, order, relaxed,
                                 t.provenance() + " [" + f.label() + " -> " + g.label() + "]"));
        };
        run(transition_hermite(f, g, {l, r}, inner), false);
        run(transition_from_single(hl, f, g), false);
        run(transition_from_blends(hl, hr, f, g), false);
        run(transition_from_single(m, f, g), false);
        run(transition_from_single(e, f, g), true);
      }
    }
  }
  return rep;
}

}  // namespace flatblend::verify

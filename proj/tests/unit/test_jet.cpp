/**
 * @file test_jet.cpp
 * @brief Jet arithmetic: products, quotients, substitution, elementary series.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "flatblend/jet.hpp"
#include "flatblend/numerics/finite_difference.hpp"

using flatblend::Elementary;
using flatblend::Jet;

namespace {

using Poly = std::vector<double>;  // ascending coefficients

Poly poly_mul(const Poly& p, const Poly& q) {
  Poly r(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

// Composition p(q(x)) by Horner in polynomial arithmetic.
Poly poly_compose(const Poly& p, const Poly& q) {
  Poly acc{p.back()};
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    acc = poly_mul(acc, q);
    acc[0] += p[i];
  }
  return acc;
}

// Taylor coefficients r^(i)(x0)/i! by repeated synthetic division.
std::vector<double> taylor_at(Poly p, double x0, std::size_t order) {
  std::vector<double> out;
  for (std::size_t i = 0; i <= order; ++i) {
    if (p.empty()) {
      out.push_back(0.0);
      continue;
    }
    Poly q(p.size() > 1 ? p.size() - 1 : 0);
    double carry = p.back();
    for (std::size_t k = p.size() - 1; k-- > 0;) {
      q[k] = carry;
      carry = p[k] + carry * x0;
    }
    out.push_back(carry);
    p = q;
  }
  return out;
}

Jet random_jet(std::mt19937& rng, std::size_t order, double c0_min = -1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(order + 1);
  for (auto& v : c) v = u(rng);
  if (c0_min > 0.0) c[0] = c0_min + std::abs(c[0]);
  return Jet(c);
}

}  // namespace

TEST(JetTest, MultiplyByOne) {
  Jet one{1.0, 0.0, 0.0};
  Jet c{2.5, -1.0, 0.75};
  Jet r = flatblend::jet_mul(one, c);
  for (std::size_t i = 0; i <= 2; ++i) EXPECT_EQ(r[i], c[i]);
}

TEST(JetTest, SquareOfVariable) {
  Jet x = Jet::variable(1.0, 2);
  Jet r = x * x;
  EXPECT_EQ(r[0], 1.0);
  EXPECT_EQ(r[1], 2.0);
  EXPECT_EQ(r[2], 1.0);
}

TEST(JetTest, ReciprocalOfOnePlusXIsGeometricSeries) {
  const std::size_t k = 8;
  Jet one = Jet::constant(1.0, k);
  Jet r = one / (1.0 + Jet::variable(0.0, k));
  for (std::size_t i = 0; i <= k; ++i) EXPECT_EQ(r[i], (i % 2 == 0) ? 1.0 : -1.0);
}

TEST(JetTest, OrderMismatchThrows) {
  EXPECT_THROW(Jet::variable(0.0, 2) * Jet::variable(0.0, 3), std::invalid_argument);
  EXPECT_THROW(Jet::variable(0.0, 2) + Jet::variable(0.0, 3), std::invalid_argument);
  EXPECT_THROW(flatblend::jet_compose(Jet::variable(0.0, 2), Jet::variable(0.0, 3)),
               std::invalid_argument);
}

TEST(JetTest, DivisionByZeroConstantTermThrows) {
  EXPECT_THROW(Jet::constant(1.0, 3) / Jet::variable(0.0, 3), std::domain_error);
}

TEST(JetTest, DerivativeConversionRoundTrip) {
  std::vector<double> raw{1.0, -2.0, 6.0, 24.0};
  Jet j = Jet::from_derivatives(raw, 0.5);
  EXPECT_DOUBLE_EQ(j[3], 4.0);
  auto back = j.derivatives();
  for (std::size_t i = 0; i < raw.size(); ++i) EXPECT_DOUBLE_EQ(back[i], raw[i]);
}

TEST(JetComposeTest, IdentityOuterReturnsInner) {
  std::mt19937 rng(7);
  Jet inner = random_jet(rng, 5);
  Jet r = flatblend::jet_compose(Jet::variable(inner[0], 5), inner);
  for (std::size_t i = 0; i <= 5; ++i) EXPECT_DOUBLE_EQ(r[i], inner[i]);
}

TEST(JetComposeTest, AffineInnerScalesDerivatives) {
  const double a = 2.0, b = 4.5, x = 3.1;
  const std::size_t k = 5;
  // outer: exp at lambda(x)
  Jet lam = (Jet::variable(x, k) - a) / (b - a);
  Jet outer = flatblend::exp(Jet::variable(lam[0], k));
  Jet r = flatblend::jet_compose(outer, lam);
  for (std::size_t i = 0; i <= k; ++i) {
    EXPECT_NEAR(r.derivative(i), outer.derivative(i) * std::pow(b - a, -double(i)), 1e-13);
  }
}

TEST(JetComposeTest, RandomCubicCompositionMatchesPolynomialExpansion) {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Poly p{u(rng), u(rng), u(rng), u(rng)};
    Poly q{u(rng), u(rng), u(rng), u(rng)};
    const double x0 = u(rng);
    const std::size_t k = 4;
    const auto q_jet = taylor_at(q, x0, k);
    const auto p_jet = taylor_at(p, q_jet[0], k);
    Jet r = flatblend::jet_compose(Jet(p_jet), Jet(q_jet));
    const auto expected = taylor_at(poly_compose(p, q), x0, k);
    for (std::size_t i = 0; i <= k; ++i) EXPECT_NEAR(r[i], expected[i], 1e-12) << i;
  }
}

TEST(JetElementaryTest, SinOfPiXAtZero) {
  const double pi = std::numbers::pi;
  Jet r = flatblend::jet_elementary(Elementary::sin, pi * Jet::variable(0.0, 3));
  EXPECT_NEAR(r[0], 0.0, 1e-15);
  EXPECT_NEAR(r[1], pi, 1e-15);
  EXPECT_NEAR(r[2], 0.0, 1e-15);
  EXPECT_NEAR(r[3], -pi * pi * pi / 6.0, 1e-14);
}

TEST(JetElementaryTest, ExpOfZeroConstant) {
  Jet r = flatblend::exp(Jet::constant(0.0, 4));
  EXPECT_EQ(r[0], 1.0);
  for (std::size_t i = 1; i <= 4; ++i) EXPECT_EQ(r[i], 0.0);
}

TEST(JetElementaryTest, Cos3PiXMatchesFiniteDifferences) {
  const double pi = std::numbers::pi;
  const double x = 0.25;
  auto f = [pi](double t) { return std::cos(3.0 * pi * t); };
  Jet r = flatblend::cos(3.0 * pi * Jet::variable(x, 4));
  // Stencil scaled to the wavelength.
  auto fd = flatblend::numerics::finite_difference_jet(f, x, 4, 0.4,
                                                       flatblend::numerics::Stencil::central);
  for (std::size_t i = 0; i <= 4; ++i) {
    EXPECT_NEAR(r.derivative(i), fd[i], 1e-6 * std::max(1.0, std::abs(fd[i]))) << i;
  }
}

TEST(JetElementaryTest, IntegerPowerMatchesRepeatedProduct) {
  Jet x = Jet::variable(0.7, 6) + 0.2;
  Jet p = flatblend::pow(x, 5);
  Jet q = x * x * x * x * x;
  for (std::size_t i = 0; i <= 6; ++i) EXPECT_NEAR(p[i], q[i], 1e-14);
  Jet inv = flatblend::pow(x, -2);
  Jet check = inv * x * x;
  EXPECT_NEAR(check[0], 1.0, 1e-15);
  for (std::size_t i = 1; i <= 6; ++i) EXPECT_NEAR(check[i], 0.0, 1e-13);
}

// Every elementary function against central differences at random points,
// orders up to 6 (the finite-difference ceiling).
TEST(JetPropertyTest, ElementaryFunctionsAgreeWithFiniteDifferences) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.25, 0.75);
  using Fn = double (*)(double);
  struct Case {
    Elementary kind;
    int exponent;
    Fn f;
  };
  const Case cases[] = {
      {Elementary::sin, 0, [](double t) { return std::sin(2.0 * t); }},
      {Elementary::cos, 0, [](double t) { return std::cos(2.0 * t); }},
      {Elementary::exp, 0, [](double t) { return std::exp(2.0 * t); }},
      {Elementary::integer_power, 3, [](double t) { return std::pow(2.0 * t + 1.0, 3); }},
      {Elementary::integer_power, -2, [](double t) { return std::pow(2.0 * t + 1.0, -2); }},
  };
  for (const auto& c : cases) {
    for (int trial = 0; trial < 10; ++trial) {
      const double x = u(rng);
      const double shift = c.kind == Elementary::integer_power ? 1.0 : 0.0;
      Jet r = flatblend::jet_elementary(c.kind, 2.0 * Jet::variable(x, 6) + shift, c.exponent);
      auto fd = flatblend::numerics::finite_difference_jet(
          c.f, x, 6, 2.0, flatblend::numerics::Stencil::central);
      for (std::size_t i = 0; i <= 6; ++i) {
        EXPECT_TRUE(flatblend::numerics::fd_agrees(fd[i], r.derivative(i), i, false))
            << "kind " << int(c.kind) << " order " << i << " x " << x;
      }
    }
  }
}

TEST(JetPropertyTest, MultiplicationCommutativeAndAssociative) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Jet a = random_jet(rng, 8), b = random_jet(rng, 8), c = random_jet(rng, 8);
    Jet ab = a * b, ba = b * a;
    Jet l = (a * b) * c, r = a * (b * c);
    for (std::size_t i = 0; i <= 8; ++i) {
      EXPECT_EQ(ab[i], ba[i]);
      EXPECT_NEAR(l[i], r[i], 1e-14);
    }
  }
}

TEST(JetPropertyTest, DivisionUndoesMultiplication) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    Jet a = random_jet(rng, 8), b = random_jet(rng, 8, 0.5);
    Jet back = (a * b) / b;
    for (std::size_t i = 0; i <= 8; ++i) EXPECT_NEAR(back[i], a[i], 1e-12);
  }
}

TEST(JetPropertyTest, HighOrdersMatchAnalyticDerivatives) {
  // Orders 7..8 lie beyond the finite-difference ceiling; compare against
  // closed-form derivatives instead.
  const double x = 0.37;
  const auto s = sin(2.0 * Jet::variable(x, 8));
  const auto e = exp(-1.5 * Jet::variable(x, 8));
  const auto q = 1.0 / (1.0 + Jet::variable(x, 8));
  for (std::size_t k = 7; k <= 8; ++k) {
    const double kd = static_cast<double>(k);
    const double ds = std::pow(2.0, kd) * std::sin(2.0 * x + kd * std::numbers::pi / 2.0);
    EXPECT_NEAR(s.derivative(k), ds, 1e-12 * std::abs(std::pow(2.0, kd)));
    const double de = std::pow(-1.5, kd) * std::exp(-1.5 * x);
    EXPECT_NEAR(e.derivative(k), de, 1e-12 * std::abs(de));
    const double dq = std::pow(-1.0, kd) * std::tgamma(kd + 1.0) / std::pow(1.0 + x, kd + 1.0);
    EXPECT_NEAR(q.derivative(k), dq, 1e-12 * std::abs(dq));
  }
}

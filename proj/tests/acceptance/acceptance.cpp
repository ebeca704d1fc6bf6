/**
 * @file acceptance.cpp
 * @brief End-to-end acceptance battery. Prints one PASS/FAIL line per
 *        criterion and exits nonzero if any criterion fails.
 *
 * FLATBLEND_CLI and FLATBLEND_GOLDEN_DIR are supplied by the build.
 */

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "flatblend/catalog.hpp"
#include "flatblend/fabius.hpp"
#include "flatblend/flat_ends.hpp"
#include "flatblend/numerics/quadrature.hpp"
#include "flatblend/operators.hpp"
#include "flatblend/step_functions.hpp"
#include "flatblend/verification.hpp"

#ifndef FLATBLEND_CLI
#error "FLATBLEND_CLI must name the command-line tool"
#endif
#ifndef FLATBLEND_GOLDEN_DIR
#error "FLATBLEND_GOLDEN_DIR must name the golden-file directory"
#endif

using namespace flatblend;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

/// First failing check of a suite, or a summary when all pass.
Outcome from_suite(const verify::SuiteReport& r) {
  for (const auto& c : r.checks) {
    if (!c.passed) {
      return {false, c.name + " = " + sci(c.value) + " > " + sci(c.tolerance) +
                         (c.detail.empty() ? "" : " (" + c.detail + ")")};
    }
  }
  return {true, std::to_string(r.checks.size()) + " checks"};
}

Outcome beta_oracle() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (std::size_t l = 0; l <= 6; ++l) {
    for (std::size_t r = 0; r <= 6; ++r) {
      auto w = [l, r](double t) {
        return std::pow(t, static_cast<double>(l)) * std::pow(1.0 - t, static_cast<double>(r));
      };
      const double total = numerics::integrate(w, kUnitInterval);
      for (int i = 0; i < 100; ++i) {
        const double x = unit(rng);
        const double q = x == 0.0 ? 0.0 : numerics::integrate(w, Interval(0.0, x)) / total;
        worst = std::max(worst, std::abs(beta_value(l, r, x) - q));
      }
    }
  }
  return {worst < 1e-10, "max |closed form - quadrature ratio| = " + sci(worst)};
}

Outcome beta_endpoints() {
  double value = 0.0, deriv = 0.0;
  for (std::size_t l = 0; l <= 6; ++l) {
    for (std::size_t r = 0; r <= 6; ++r) {
      const auto b = beta_step(l, r);
      const auto j0 = b.jet(0.0, l).derivatives();
      const auto j1 = b.jet(1.0, r).derivatives();
      value = std::max({value, std::abs(j0[0]), std::abs(j1[0] - 1.0)});
      for (std::size_t k = 1; k <= l; ++k) deriv = std::max(deriv, std::abs(j0[k]));
      for (std::size_t k = 1; k <= r; ++k) deriv = std::max(deriv, std::abs(j1[k]));
    }
  }
  return {value <= 1e-14 && deriv <= 1e-8,
          "endpoint value defect " + sci(value) + ", derivative defect " + sci(deriv)};
}

Outcome hermite_equivalence() {
  verify::HermiteOracleOptions opt;
  opt.max_order = 5;
  return from_suite(verify::hermite_oracle_suite(opt));
}

Outcome blend_contract() {
  const Interval d(2.0, 4.0);
  const std::vector<SmoothFunction> battery{catalog::polynomial(d, {0.5, -1.0, 2.0, 0.25}),
                                            catalog::sine(d, 1.0), catalog::exponential(d, 1.0),
                                            catalog::blend_example(Interval(1.0, 5.0))};
  std::size_t cases = 0;
  double worst_linearity = 0.0;
  for (std::size_t l = 0; l <= 4; ++l) {
    for (std::size_t r = 0; r <= 4; ++r) {
      struct Op {
        BlendOperator op;
        bool relaxed;
        bool linear_checked;
      };
      std::vector<Op> ops;
      for (Direction dir : {Direction::leftward, Direction::rightward}) {
        const auto h = BlendOperator::hermite(dir, {l, r}, d);
        ops.push_back({h, false, true});
        ops.push_back({h.complement(), false, false});
        if (l == 0 || r == 0) continue;  // multiplicative carriers are flat at both ends
        const unsigned m = static_cast<unsigned>(std::max(l, r) / 2);
        const std::pair<SmoothFunction, bool> carriers[] = {{beta_step(l, r), false},
                                                            {rational_step(l, r), false},
                                                            {trig_step(m), false},
                                                            {expo_rational_step(), true}};
        for (const auto& [sigma, relaxed] : carriers) {
          const auto op = BlendOperator::from_step(dir, sigma, d, StepOrders{l, r});
          ops.push_back({op, relaxed, true});
          ops.push_back({op.complement(), relaxed, false});
        }
      }
      for (const auto& o : ops) {
        for (std::size_t i = 0; i < battery.size(); ++i) {
          BlendCheckOptions bo;
          bo.relaxed_fd = o.relaxed;
          const auto rep = verify_blend(o.op, battery[i], std::min(l, r), bo);
          ++cases;
          if (!rep.passed()) {
            return {false, o.op.describe() + " on " + battery[i].label() + ": jet " +
                               (rep.jet_passed ? "ok" : "failed") + ", fd " +
                               (rep.fd_passed ? "ok" : "failed")};
          }
          if (o.linear_checked && i + 1 < battery.size()) {
            worst_linearity = std::max(
                worst_linearity, linearity_check(o.op, battery[i], battery[i + 1], 1.5, -0.75, 257));
          }
        }
      }
    }
  }
  return {worst_linearity < 1e-11, std::to_string(cases) + " operator/function cases, " +
                                       "max linearity defect " + sci(worst_linearity)};
}

Outcome transition_seams() { return from_suite(verify::seam_battery({4})); }

Outcome trig_family() {
  verify::TrigOdeOptions opt;
  opt.max_m = 5;
  return from_suite(verify::trig_ode_suite(opt));
}

Outcome exact_identities() { return from_suite(verify::binomial_suite({10})); }

Outcome fabius_function() {
  FabiusTable table;
  try {
    table = solve_fabius(FabiusOptions{});
  } catch (const ConvergenceError& e) {
    return {false, e.what()};
  }
  const auto t = fabius(table);
  const double sym = symmetry_check(t, 1001).max_defect;
  double fe = 0.0;  // central-difference slope against 2 T(2x)
  const double h = 1e-5;
  for (int i = 1; i < 500; ++i) {
    const double x = i / 1000.0;
    const double slope = (t.value(x + h) - t.value(x - h)) / (2 * h);
    fe = std::max(fe, std::abs(slope - 2.0 * t.value(2.0 * x)));
  }
  const double mid = std::abs(t.value(0.5) - 0.5);
  const bool ok = table.last_change < 1e-10 && sym < 1e-8 && fe < 1e-6 && mid <= 1e-8;
  return {ok, std::to_string(table.iterations) + " iterations, symmetry " + sci(sym) +
                  ", functional equation " + sci(fe) + ", |T(1/2) - 1/2| " + sci(mid)};
}

Outcome closure_properties() {
  auto rep = verify::closure_suite({});
  const SmoothFunction sym[] = {beta_step(2, 2), trig_step(1), rational_step(3, 3), trig_step(2)};
  for (const auto& u : sym) {
    for (const auto& v : sym) {
      const auto c = change_of_interval(u, v);
      rep.add(c.label() + " symmetry", symmetry_check(c, 1001).max_defect,
              verify::kCompositionSymmetryTol);
    }
  }
  return from_suite(rep);
}

// ------------------------------------------------------------------ CLI

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

/// Runs the CLI with stdout to `out` (or discarded) and returns its exit code.
int run_cli(const std::string& args, const fs::path& out = "/dev/null") {
  const std::string cmd =
      quote(FLATBLEND_CLI) + " " + args + " > " + quote(out.string()) + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

Outcome cli_determinism() {
  const fs::path golden = FLATBLEND_GOLDEN_DIR;
  const fs::path tmp = fs::temp_directory_path() / ("flatblend_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(tmp);
  const std::string desc = quote((golden / "blend0op_descriptor.json").string());
  struct Golden {
    std::string args;
    std::string file;
  };
  const Golden goldens[] = {
      {"sample --family beta --orders 1,1 --n 11 --derivs 1", "beta_1_1.csv"},
      {"sample --family rational --orders 4,2 --n 21 --derivs 2", "rational_4_2.csv"},
      {"sample --family trig --m 1 --n 21 --derivs 2", "trig_1.csv"},
      {"sample --descriptor " + desc + " --range 2,4 --n 41 --derivs 1", "blend0op.csv"},
      {"sample --family beta --orders 1,1 --n 11 --format json", "beta_1_1.json"},
      {"sample --descriptor " + desc + " --range 2,4 --n 81 --format svg", "blend0op.svg"}};
  Outcome o{true, ""};
  for (const auto& g : goldens) {
    for (int run = 0; run < 2; ++run) {  // repeat: output must not vary between runs
      const fs::path out = tmp / (std::to_string(run) + "_" + g.file);
      const int code = run_cli(g.args, out);
      if (code != 0) return {false, g.file + ": exit code " + std::to_string(code)};
      if (read_file(out) != read_file(golden / g.file)) {
        return {false, g.file + ": output differs from golden (run " + std::to_string(run) + ")"};
      }
    }
  }
  struct Exit {
    std::string args;
    int expected;
  };
  const Exit exits[] = {
      {"verify binomial --max-m 10", 0},
      {"verify trig-ode --m 2", 0},
      {"verify flatness --family beta --max-order 5", 0},
      {"verify flatness --family beta --orders 2,2 --check-order 3", 1},
      {"verify no-such-suite", 2},
      {"verify flatness --family gauss", 2},
      {"eval --at 0.5", 2},
      {"sample --family beta --orders 1,1 --output " + quote((tmp / "missing" / "x.csv").string()), 2},
      {"verify seams --descriptor " + quote((tmp / "absent.json").string()), 2}};
  for (const auto& e : exits) {
    const int code = run_cli(e.args);
    if (code != e.expected) {
      o = {false, "'" + e.args + "' exited " + std::to_string(code) + ", expected " +
                      std::to_string(e.expected)};
      break;
    }
  }
  fs::remove_all(tmp);
  if (o.passed) {
    o.detail = std::to_string(std::size(goldens)) + " golden files byte-identical twice, " +
               std::to_string(std::size(exits)) + " exit codes as specified";
  }
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"beta closed form matches quadrature ratio", beta_oracle},
      {"beta endpoint pattern", beta_endpoints},
      {"hermite interpolant matches linear-system oracle", hermite_equivalence},
      {"blend operator endpoint contract and linearity", blend_contract},
      {"transition seams and branch exactness", transition_seams},
      {"trigonometric family", trig_family},
      {"exact binomial and cosine-weight identities", exact_identities},
      {"fabius function", fabius_function},
      {"closure under products and compositions", closure_properties},
      {"cli golden files and exit codes", cli_determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.passed ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    if (!o.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}

#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end: `eval`, `sample` and `verify`.
 *
 * Exit codes: 0 success, 1 verification failure, 2 usage or IO error.
 */

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatblend/catalog.hpp"
#include "flatblend/io/csv.hpp"
#include "flatblend/io/descriptor.hpp"
#include "flatblend/io/format.hpp"
#include "flatblend/io/json.hpp"
#include "flatblend/io/svg.hpp"
#include "flatblend/verification.hpp"

namespace flatblend::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Invalid option combination detected after parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Function selection shared by eval and sample.
struct SourceOptions {
  std::string family;
  std::vector<std::size_t> orders;
  std::optional<unsigned> m;
  std::string descriptor;
};

inline void add_source_options(CLI::App& cmd, SourceOptions& s) {
  auto* fam = cmd.add_option("--family", s.family, "Step family: beta, rational, expo, trig, fabius");
  cmd.add_option("--orders", s.orders, "Flatness orders l,r (beta, rational)")
      ->delimiter(',')
      ->expected(2);
  cmd.add_option("--m", s.m, "Trigonometric index m (trig)");
  auto* desc = cmd.add_option("--descriptor", s.descriptor, "Transition descriptor JSON file");
  fam->excludes(desc);
}

struct Source {
  SmoothFunction f;
  std::string label;
};

inline Source resolve_source(const SourceOptions& s) {
  if (!s.descriptor.empty()) {
    const auto d = io::load_descriptor(s.descriptor);
    const auto t = io::build_transition(d);
    return {t.as_function(), d.label.empty() ? t.provenance() : d.label};
  }
  if (s.family.empty()) throw UsageError("one of --family or --descriptor is required");
  catalog::StepParams p;
  p.family = catalog::parse_family(s.family);
  const bool two_orders = p.family == catalog::Family::beta || p.family == catalog::Family::rational;
  if (two_orders) {
    if (s.orders.size() != 2) throw UsageError("--family " + s.family + " needs --orders l,r");
    p.left = s.orders[0];
    p.right = s.orders[1];
  } else if (!s.orders.empty()) {
    throw UsageError("--orders does not apply to --family " + s.family);
  }
  if (p.family == catalog::Family::trig) {
    if (!s.m) throw UsageError("--family trig needs --m");
    p.m = *s.m;
  } else if (s.m) {
    throw UsageError("--m applies only to --family trig");
  }
  const auto f = catalog::make_step(p);
  return {f, f.label()};
}

enum class Format { csv, json, svg };

inline Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  if (name == "svg") return Format::svg;
  throw UsageError("unknown format '" + name + "' (csv, json, svg)");
}

/// Format implied by an output path's extension; csv otherwise.
inline Format format_for_path(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  if (ext == ".json") return Format::json;
  if (ext == ".svg") return Format::svg;
  return Format::csv;
}

inline void write_table(std::ostream& out, const io::SampleTable& t, Format f) {
  switch (f) {
    case Format::csv: io::write_csv(out, t); break;
    case Format::json: out << io::to_json(t).dump(2) << '\n'; break;
    case Format::svg: io::write_svg(out, t); break;
  }
}

/// Writes to `path`, or to `stdout_stream` when path is "-".
template <typename Writer>
void with_output(const std::string& path, std::ostream& stdout_stream, Writer&& write) {
  if (path == "-") {
    write(stdout_stream);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

inline Interval parse_range(const std::vector<double>& r, const Interval& domain) {
  if (r.empty()) return domain;
  if (!(r[0] < r[1])) throw UsageError("--range needs a < b");
  const Interval range(r[0], r[1]);
  if (!domain.contains(range)) {
    throw UsageError("--range lies outside the function domain " + flatblend::detail::format_interval(domain));
  }
  return range;
}

struct VerifyOptions {
  std::string json;
  verify::FlatnessOptions flatness;
  std::string flatness_family = "beta";
  std::vector<std::size_t> flatness_orders;
  std::optional<std::size_t> flatness_max_order;
  std::optional<unsigned> flatness_max_m;
  verify::SymmetryOptions symmetry;
  verify::ClosureOptions closure;
  verify::HermiteOracleOptions hermite;
  verify::TrigOdeOptions trig;
  verify::BinomialOptions binomial;
  std::string seams_descriptor;
  std::optional<std::size_t> seams_check_order;
  verify::SeamBatteryOptions seams;
};

inline verify::SuiteReport run_flatness(VerifyOptions& v) {
  auto& o = v.flatness;
  o.family = catalog::parse_family(v.flatness_family);
  const bool two_orders = o.family == catalog::Family::beta || o.family == catalog::Family::rational;
  if (!v.flatness_orders.empty()) {
    if (!two_orders) throw UsageError("--orders applies only to beta and rational");
    if (v.flatness_max_order) throw UsageError("--orders and --max-order are exclusive");
    o.orders = StepOrders{v.flatness_orders[0], v.flatness_orders[1]};
  }
  if (v.flatness_max_order) {
    if (!two_orders) throw UsageError("--max-order applies only to beta and rational");
    o.max_order = *v.flatness_max_order;
  }
  if ((o.m || v.flatness_max_m) && o.family != catalog::Family::trig) {
    throw UsageError("--m and --max-m apply only to trig");
  }
  if (o.m && v.flatness_max_m) throw UsageError("--m and --max-m are exclusive");
  if (v.flatness_max_m) o.max_m = *v.flatness_max_m;
  return verify::flatness_suite(o);
}

inline verify::SuiteReport run_seams(const VerifyOptions& v) {
  if (v.seams_descriptor.empty()) {
    if (v.seams_check_order) throw UsageError("--check-order needs --descriptor");
    return verify::seam_battery(v.seams);
  }
  const auto d = io::load_descriptor(v.seams_descriptor);
  const auto t = io::build_transition(d);
  std::size_t order = v.seams_check_order.value_or(0);
  if (!v.seams_check_order) {
    const auto o = d.orders;
    order = std::min(o.left.is_finite() ? o.left.value() : numerics::kMaxFdOrder,
                     o.right.is_finite() ? o.right.value() : numerics::kMaxFdOrder);
  }
  return verify::seam_checks(t, order, io::relaxed_fd(d));
}

/**
 * Runs the command line. Output goes to `out`, diagnostics to `err`.
 * Returns the process exit code.
 */
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Flat-ended smooth transitions: evaluate, sample and verify", "flatblend"};
  app.require_subcommand(1);

  // eval
  SourceOptions eval_src;
  std::vector<double> eval_at;
  std::size_t eval_derivs = 0;
  auto* eval = app.add_subcommand("eval", "Print x,value[,d1..dk] rows at given points");
  add_source_options(*eval, eval_src);
  eval->add_option("--at", eval_at, "Evaluation points (repeatable or comma separated)")
      ->delimiter(',')
      ->required();
  eval->add_option("--derivs", eval_derivs, "Number of derivative columns");

  // sample
  SourceOptions sample_src;
  std::size_t sample_n = 101, sample_derivs = 0;
  std::string sample_output = "-", sample_format;
  std::vector<double> sample_range;
  auto* sample = app.add_subcommand("sample", "Sample on a uniform grid to CSV, JSON or SVG");
  add_source_options(*sample, sample_src);
  sample->add_option("--n", sample_n, "Number of points (>= 2)")->capture_default_str();
  sample->add_option("--output,-o", sample_output, "Output path, '-' for stdout")
      ->capture_default_str();
  sample->add_option("--format", sample_format, "csv, json or svg (default: from extension)");
  sample->add_option("--range", sample_range, "Sub-interval a,b of the domain")
      ->delimiter(',')
      ->expected(2);
  sample->add_option("--derivs", sample_derivs, "Number of derivative columns");

  // verify
  VerifyOptions v;
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->require_subcommand(1);
  ver->add_option("--json", v.json, "Also write the JSON report to this path ('-' for stdout only)");

  auto* flat = ver->add_subcommand("flatness", "Endpoint values and flatness of a step family");
  flat->add_option("--family", v.flatness_family, "beta, rational, expo, trig, fabius")
      ->capture_default_str();
  flat->add_option("--orders", v.flatness_orders, "Single step l,r")->delimiter(',')->expected(2);
  flat->add_option("--max-order", v.flatness_max_order, "Sweep l, r = 1..N");
  flat->add_option("--m", v.flatness.m, "Single trig index");
  flat->add_option("--max-m", v.flatness_max_m, "Sweep trig m = 0..N");
  flat->add_option("--check-order", v.flatness.check_order, "Check this order at both ends");

  auto* sym = ver->add_subcommand("symmetry", "Point symmetry of symmetric steps and compositions");
  sym->add_option("--max-m", v.symmetry.max_m)->capture_default_str();
  sym->add_option("--max-order", v.symmetry.max_order)->capture_default_str();
  sym->add_option("--grid", v.symmetry.grid_size)->capture_default_str();

  auto* clo = ver->add_subcommand("closure", "Products and compositions of step functions");
  clo->add_option("--max-order", v.closure.max_order)->capture_default_str();
  clo->add_option("--grid", v.closure.grid_size)->capture_default_str();

  auto* her = ver->add_subcommand("hermite-oracle", "Hermite interpolant against the linear-system oracle");
  her->add_option("--max-order", v.hermite.max_order)->capture_default_str();
  her->add_option("--seed", v.hermite.seed)->capture_default_str();

  auto* trig = ver->add_subcommand("trig-ode", "ODE residual and boundary pattern of T_m");
  auto* trig_m = trig->add_option("--m", v.trig.m, "Single m");
  trig->add_option("--max-m", v.trig.max_m, "Sweep m = 0..N")->capture_default_str()->excludes(trig_m);

  auto* bin = ver->add_subcommand("binomial", "Exact binomial sums and cosine weight system");
  bin->add_option("--max-m", v.binomial.max_m)->capture_default_str();

  auto* seams = ver->add_subcommand("seams", "Seam continuity of piecewise transitions");
  seams->add_option("--descriptor", v.seams_descriptor, "Transition descriptor JSON file");
  seams->add_option("--check-order", v.seams_check_order, "Seam order to check (descriptor)");
  seams->add_option("--max-order", v.seams.max_order, "Battery orders l, r = 1..N")
      ->capture_default_str();

  for (auto* s : {flat, sym, clo, her, trig, bin, seams}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*eval) {
      const auto src = resolve_source(eval_src);
      for (double x : eval_at) {
        if (!src.f.domain().contains(x)) {
          throw UsageError("--at " + io::format_double(x) + " lies outside the domain " +
                           flatblend::detail::format_interval(src.f.domain()));
        }
        io::write_csv_row(out, x, src.f.jet(x, eval_derivs).derivatives());
      }
      return kExitSuccess;
    }
    if (*sample) {
      const auto src = resolve_source(sample_src);
      const Format fmt =
          sample_format.empty() ? format_for_path(sample_output) : parse_format(sample_format);
      if (sample_n < 2) throw UsageError("--n must be at least 2");
      const Interval range = parse_range(sample_range, src.f.domain());
      const auto table = io::sample([&](double x, std::size_t k) { return src.f.jet(x, k); },
                                    range, sample_n, sample_derivs, src.label);
      with_output(sample_output, out, [&](std::ostream& o) { write_table(o, table, fmt); });
      return kExitSuccess;
    }
    verify::SuiteReport report;
    if (*flat) report = run_flatness(v);
    else if (*sym) report = verify::symmetry_suite(v.symmetry);
    else if (*clo) report = verify::closure_suite(v.closure);
    else if (*her) report = verify::hermite_oracle_suite(v.hermite);
    else if (*trig) report = verify::trig_ode_suite(v.trig);
    else if (*bin) report = verify::binomial_suite(v.binomial);
    else report = run_seams(v);
    if (v.json != "-") verify::print_table(out, report);
    if (!v.json.empty()) {
      with_output(v.json, out, [&](std::ostream& o) { o << verify::to_json(report).dump(2) << '\n'; });
    }
    return report.passed() ? kExitSuccess : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace flatblend::cli

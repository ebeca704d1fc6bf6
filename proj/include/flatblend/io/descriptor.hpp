#pragma once

/**
 * @file descriptor.hpp
 * @brief JSON transition descriptors: parsing, validation and construction
 *        of the described PiecewiseTransition.
 *
 * Layout (see docs/transition_descriptor.schema.json):
 *
 *   {
 *     "outer": [a, b], "inner": [a0, b0], "orders": [l, r],
 *     "construction": "single" | "blends" | "hermite",
 *     "operator": {"kind": "hermite"} |
 *                 {"kind": "multiplicative",
 *                  "carrier": {"family": "beta", "orders": [l, r]}},
 *     "left":  <function>, "right": <function>
 *   }
 *
 * A <function> is {"type": "constant", "value": c},
 * {"type": "polynomial", "coefficients": [c0, c1, ...]},
 * {"type": "sin" | "cos", "frequency": w, "amplitude"?: A, "phase"?: p},
 * {"type": "exp", "rate": k, "amplitude"?: A}, {"type": "blend0op"}, or
 * {"type": "sampled", "file": path, "interval"?: [a, b]}. Sampled file paths
 * are resolved against the descriptor's directory.
 */

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <iterator>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatblend/catalog.hpp"
#include "flatblend/io/csv.hpp"
#include "flatblend/operators.hpp"
#include "flatblend/transitions.hpp"

namespace flatblend::io {

/// Raised for any structural or semantic problem in a descriptor.
class DescriptorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Construction { single, blends, hermite };

struct CarrierSpec {
  catalog::StepParams params;
};

struct OperatorSpec {
  OperatorKind kind = OperatorKind::hermite;  // hermite or multiplicative
  std::optional<CarrierSpec> carrier;
};

struct TransitionDescriptor {
  Interval outer{0.0, 1.0};
  Interval inner{0.0, 1.0};
  StepOrders orders{1, 1};
  Construction construction = Construction::single;
  OperatorSpec op;
  nlohmann::json left;
  nlohmann::json right;
  std::filesystem::path base_dir;  // for sampled-data references
  std::string label;               // optional
};

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw DescriptorError("descriptor: " + where + ": " + what);
}

inline const nlohmann::json& member(const nlohmann::json& j, const char* key,
                                    const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing '") + key + "'");
  return j.at(key);
}

inline double number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

inline double number_or(const nlohmann::json& j, const char* key, double fallback,
                        const std::string& where) {
  return j.contains(key) ? number(j.at(key), where + "." + key) : fallback;
}

inline Interval interval(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected [a, b]");
  const double a = number(j[0], where), b = number(j[1], where);
  if (!(a < b)) fail(where, "requires a < b");
  return Interval(a, b);
}

inline std::size_t count(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    fail(where, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

inline StepOrders orders(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected [l, r]");
  return {count(j[0], where), count(j[1], where)};
}

inline Construction construction(const nlohmann::json& j) {
  if (!j.is_string()) fail("construction", "expected a string");
  const auto s = j.get<std::string>();
  if (s == "single") return Construction::single;
  if (s == "blends") return Construction::blends;
  if (s == "hermite") return Construction::hermite;
  fail("construction", "unknown value '" + s + "' (single, blends, hermite)");
}

inline catalog::StepParams carrier_params(const nlohmann::json& j) {
  const std::string where = "operator.carrier";
  catalog::StepParams p;
  try {
    p.family = catalog::parse_family(member(j, "family", where).get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  switch (p.family) {
    case catalog::Family::beta:
    case catalog::Family::rational: {
      const auto o = orders(member(j, "orders", where), where + ".orders");
      p.left = o.left.value();
      p.right = o.right.value();
      break;
    }
    case catalog::Family::trig:
      p.m = static_cast<unsigned>(count(member(j, "m", where), where + ".m"));
      break;
    case catalog::Family::fabius:
      if (j.contains("grid_size")) p.fabius.grid_size = count(j.at("grid_size"), where);
      p.fabius.tolerance = number_or(j, "tolerance", p.fabius.tolerance, where);
      break;
    default: break;
  }
  return p;
}

inline OperatorSpec operator_spec(const nlohmann::json& j) {
  OperatorSpec op;
  const auto& kind = member(j, "kind", "operator");
  if (!kind.is_string()) fail("operator.kind", "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "hermite") {
    op.kind = OperatorKind::hermite;
  } else if (k == "multiplicative") {
    op.kind = OperatorKind::multiplicative;
    op.carrier = CarrierSpec{carrier_params(member(j, "carrier", "operator"))};
  } else {
    fail("operator.kind", "unknown value '" + k + "' (hermite, multiplicative)");
  }
  return op;
}

}  // namespace detail

/// Parses and validates a descriptor document.
inline TransitionDescriptor parse_descriptor(const nlohmann::json& j,
                                             std::filesystem::path base_dir = {}) {
  if (!j.is_object()) detail::fail("document", "expected a JSON object");
  static const char* const known[] = {"label", "outer", "inner", "orders",
                                      "construction", "operator", "left", "right"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      detail::fail("document", "unknown key '" + key + "'");
    }
  }
  TransitionDescriptor d;
  if (j.contains("label")) {
    if (!j.at("label").is_string()) detail::fail("label", "expected a string");
    d.label = j.at("label").get<std::string>();
  }
  d.outer = detail::interval(detail::member(j, "outer", "document"), "outer");
  d.inner = detail::interval(detail::member(j, "inner", "document"), "inner");
  if (!(d.outer.a() < d.inner.a() && d.inner.b() < d.outer.b())) {
    detail::fail("inner", "intervals must satisfy a < a0 < b0 < b");
  }
  d.orders = detail::orders(detail::member(j, "orders", "document"), "orders");
  d.construction = detail::construction(detail::member(j, "construction", "document"));
  if (d.construction != Construction::hermite) {
    d.op = detail::operator_spec(detail::member(j, "operator", "document"));
  } else if (j.contains("operator")) {
    detail::fail("operator", "not used by the hermite construction");
  }
  d.left = detail::member(j, "left", "document");
  d.right = detail::member(j, "right", "document");
  d.base_dir = std::move(base_dir);
  return d;
}

inline TransitionDescriptor load_descriptor(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw DescriptorError(path.string() + ": " + e.what());
  }
  return parse_descriptor(j, path.parent_path());
}

/// Branch function on `domain` from a function spec.
inline SmoothFunction build_function(const nlohmann::json& j, const Interval& domain,
                                     const std::filesystem::path& base_dir,
                                     const std::string& where) {
  const auto& type_j = detail::member(j, "type", where);
  if (!type_j.is_string()) detail::fail(where + ".type", "expected a string");
  const auto type = type_j.get<std::string>();
  if (type == "constant") {
    return catalog::constant(domain, detail::number(detail::member(j, "value", where), where));
  }
  if (type == "polynomial") {
    const auto& c = detail::member(j, "coefficients", where);
    if (!c.is_array() || c.empty()) detail::fail(where, "coefficients must be a nonempty array");
    std::vector<double> coeffs;
    for (const auto& v : c) coeffs.push_back(detail::number(v, where + ".coefficients"));
    return catalog::polynomial(domain, coeffs);
  }
  if (type == "sin" || type == "cos") {
    const double w = detail::number(detail::member(j, "frequency", where), where);
    const double a = detail::number_or(j, "amplitude", 1.0, where);
    const double p = detail::number_or(j, "phase", 0.0, where);
    return type == "sin" ? catalog::sine(domain, w, a, p) : catalog::cosine(domain, w, a, p);
  }
  if (type == "exp") {
    const double k = detail::number(detail::member(j, "rate", where), where);
    return catalog::exponential(domain, k, detail::number_or(j, "amplitude", 1.0, where));
  }
  if (type == "blend0op") return catalog::blend_example(domain);
  if (type == "sampled") {
    const auto& f = detail::member(j, "file", where);
    if (!f.is_string()) detail::fail(where + ".file", "expected a path");
    std::filesystem::path p = f.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    const auto data = read_sampled_csv_file(p.string());
    std::optional<Interval> span = data.interval;
    if (j.contains("interval")) span = detail::interval(j.at("interval"), where + ".interval");
    if (!span) detail::fail(where, "single-column sampled data needs an 'interval'");
    if (!span->contains(domain)) {
      detail::fail(where, "sampled data does not cover the required branch interval");
    }
    return catalog::sampled(*span, data.values, "sampled(" + p.filename().string() + ")");
  }
  detail::fail(where + ".type", "unknown function type '" + type + "'");
}

inline PiecewiseTransition build_transition(const TransitionDescriptor& d) {
  const auto f = build_function(d.left, d.outer, d.base_dir, "left");
  const auto g = build_function(d.right, d.outer, d.base_dir, "right");
  if (d.construction == Construction::hermite) {
    return transition_hermite(f, g, d.orders, d.inner);
  }
  auto make = [&](Direction dir) {
    if (d.op.kind == OperatorKind::hermite) return BlendOperator::hermite(dir, d.orders, d.inner);
    const auto sigma = catalog::make_step(d.op.carrier->params);
    return BlendOperator::from_step(dir, sigma, d.inner, d.orders);
  };
  try {
    if (d.construction == Construction::single) {
      return transition_from_single(make(Direction::leftward), f, g);
    }
    return transition_from_blends(make(Direction::leftward), make(Direction::rightward), f, g);
  } catch (const std::invalid_argument& e) {
    throw DescriptorError(std::string("descriptor: ") + e.what());
  }
}

/// True for carriers whose checks use the expo-rational FD relaxation.
inline bool relaxed_fd(const TransitionDescriptor& d) {
  return d.op.carrier && d.op.carrier->params.family == catalog::Family::expo;
}

}  // namespace flatblend::io

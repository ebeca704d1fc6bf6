#pragma once

/**
 * @file json.hpp
 * @brief JSON form of sample tables: {"label", "x", "value", "d1", ...}.
 */

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "flatblend/io/format.hpp"

namespace flatblend::io {

inline std::string column_name(std::size_t k) { return k == 0 ? "value" : "d" + std::to_string(k); }

inline nlohmann::ordered_json to_json(const SampleTable& t) {
  nlohmann::ordered_json j;
  j["label"] = t.label;
  j["x"] = t.x;
  for (std::size_t k = 0; k < t.columns.size(); ++k) j[column_name(k)] = t.columns[k];
  return j;
}

inline SampleTable sample_table_from_json(const nlohmann::json& j) {
  SampleTable t;
  t.label = j.value("label", std::string{});
  t.x = j.at("x").get<std::vector<double>>();
  for (std::size_t k = 0; j.contains(column_name(k)); ++k) {
    t.columns.push_back(j.at(column_name(k)).get<std::vector<double>>());
    if (t.columns.back().size() != t.x.size()) {
      throw std::invalid_argument("sample table: column '" + column_name(k) +
                                  "' length differs from x");
    }
  }
  if (t.columns.empty()) throw std::invalid_argument("sample table: no 'value' column");
  return t;
}

}  // namespace flatblend::io

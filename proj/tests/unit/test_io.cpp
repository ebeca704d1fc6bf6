/**
 * @file test_io.cpp
 * @brief Number formatting, CSV/JSON/SVG writers, sampled-data input and
 *        transition descriptors.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "flatblend/io/csv.hpp"
#include "flatblend/io/descriptor.hpp"
#include "flatblend/io/format.hpp"
#include "flatblend/io/json.hpp"
#include "flatblend/io/svg.hpp"
#include "flatblend/step_functions.hpp"

using namespace flatblend;
using nlohmann::json;

namespace {

io::SampleTable beta_table(std::size_t n, std::size_t derivs) {
  const auto b = beta_step(2, 3);
  return io::sample([&](double x, std::size_t k) { return b.jet(x, k); }, kUnitInterval, n, derivs,
                    b.label());
}

json blend0op_document() {
  return json::parse(R"({
    "outer": [1, 5], "inner": [2, 4], "orders": [4, 2], "construction": "single",
    "operator": {"kind": "multiplicative", "carrier": {"family": "rational", "orders": [4, 2]}},
    "left": {"type": "constant", "value": 0}, "right": {"type": "blend0op"}
  })");
}

}  // namespace

TEST(FormatTest, ShortestRoundTrip) {
  EXPECT_EQ(io::format_double(0.1), "0.1");
  EXPECT_EQ(io::format_double(0.5), "0.5");
  EXPECT_EQ(io::format_double(1.0), "1");
  EXPECT_EQ(io::format_double(0.1 + 0.2), "0.30000000000000004");
  EXPECT_EQ(io::format_double(1e-300), "1e-300");
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, i % 20 - 10);
    const auto s = io::format_double(v);
    EXPECT_LE(s.size(), 24u);
    EXPECT_EQ(io::parse_double(s), v) << s;
  }
}

TEST(FormatTest, ParseRejectsGarbage) {
  EXPECT_EQ(io::parse_double(" +2.5 "), 2.5);
  EXPECT_THROW(io::parse_double("2.5x"), std::invalid_argument);
  EXPECT_THROW(io::parse_double(""), std::invalid_argument);
  EXPECT_THROW(io::parse_double("value"), std::invalid_argument);
}

TEST(SampleTest, GridAndColumns) {
  const auto t = beta_table(5, 2);
  ASSERT_EQ(t.x.size(), 5u);
  EXPECT_EQ(t.x.front(), 0.0);
  EXPECT_EQ(t.x.back(), 1.0);
  EXPECT_EQ(t.derivs(), 2u);
  EXPECT_EQ(t.columns[0][4], 1.0);
  EXPECT_THROW(beta_table(1, 0), std::invalid_argument);
}

TEST(CsvTest, HeaderAndRows) {
  std::ostringstream out;
  const auto b = beta_step(1, 1);
  io::write_csv(out, io::sample([&](double x, std::size_t k) { return b.jet(x, k); },
                                kUnitInterval, 3, 1, "b"));
  EXPECT_EQ(out.str(), "x,value,d1\n0,0,0\n0.5,0.5,1.5\n1,1,0\n");
  EXPECT_EQ(io::csv_header(0), "x,value");
}

TEST(CsvTest, WriteIsDeterministic) {
  std::ostringstream a, b;
  io::write_csv(a, beta_table(257, 3));
  io::write_csv(b, beta_table(257, 3));
  EXPECT_EQ(a.str(), b.str());
}

TEST(CsvTest, ReadTwoColumnsWithHeader) {
  std::istringstream in("x,value\n0,1\n0.5,2\n1,4\n");
  const auto d = io::read_sampled_csv(in);
  ASSERT_TRUE(d.interval.has_value());
  EXPECT_EQ(*d.interval, Interval(0.0, 1.0));
  EXPECT_EQ(d.values, (std::vector<double>{1.0, 2.0, 4.0}));
}

TEST(CsvTest, ReadSingleColumnWithoutHeader) {
  std::istringstream in("1\n2\n\n3\n");
  const auto d = io::read_sampled_csv(in);
  EXPECT_FALSE(d.interval.has_value());
  EXPECT_EQ(d.values.size(), 3u);
}

TEST(CsvTest, RoundTripOfValueColumn) {
  const auto t = beta_table(33, 0);
  std::ostringstream out;
  io::write_csv(out, t);
  std::istringstream in(out.str());
  const auto d = io::read_sampled_csv(in);
  EXPECT_EQ(d.values, t.columns[0]);
}

TEST(CsvTest, RejectsMalformedInput) {
  std::istringstream uneven("0,1\n0.1,2\n1,3\n");
  EXPECT_THROW(io::read_sampled_csv(uneven), std::invalid_argument);
  std::istringstream wide("1,2,3\n");
  EXPECT_THROW(io::read_sampled_csv(wide), std::invalid_argument);
  std::istringstream mixed("0,1\n2\n");
  EXPECT_THROW(io::read_sampled_csv(mixed), std::invalid_argument);
  std::istringstream bad("x\n1\nfoo\n");
  EXPECT_THROW(io::read_sampled_csv(bad), std::invalid_argument);
  std::istringstream one("1\n");
  EXPECT_THROW(io::read_sampled_csv(one), std::invalid_argument);
  EXPECT_THROW(io::read_sampled_csv_file("/nonexistent/file.csv"), std::runtime_error);
}

TEST(JsonTest, RoundTripIsExact) {
  const auto t = beta_table(101, 2);
  const auto text = io::to_json(t).dump();
  const auto back = io::sample_table_from_json(json::parse(text));
  EXPECT_EQ(back.label, t.label);
  EXPECT_EQ(back.x, t.x);
  EXPECT_EQ(back.columns, t.columns);
}

TEST(JsonTest, KeysInOrder) {
  const auto j = io::to_json(beta_table(3, 1));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"label", "x", "value", "d1"}));
  EXPECT_THROW(io::sample_table_from_json(json::parse(R"({"x": [0, 1]})")), std::invalid_argument);
  EXPECT_THROW(io::sample_table_from_json(json::parse(R"({"x": [0, 1], "value": [0]})")),
               std::invalid_argument);
}

TEST(SvgTest, OnePolylinePerSeriesWithAxes) {
  std::ostringstream out;
  io::write_svg(out, beta_table(21, 2));
  const auto s = out.str();
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
  };
  EXPECT_EQ(s.rfind("<?xml", 0), 0u);
  EXPECT_NE(s.find("version=\"1.1\""), std::string::npos);
  EXPECT_NE(s.find("width=\"800\" height=\"600\""), std::string::npos);
  EXPECT_EQ(count("<polyline"), 3u);
  EXPECT_EQ(count("<line"), 2u);
  EXPECT_NE(s.find("data-series=\"d2\""), std::string::npos);
}

TEST(SvgTest, EscapesTitle) {
  io::SampleTable t{"a<b & c", {0.0, 1.0}, {{0.0, 1.0}}};
  std::ostringstream out;
  io::write_svg(out, t);
  EXPECT_NE(out.str().find("<title>a&lt;b &amp; c</title>"), std::string::npos);
}

TEST(DescriptorTest, BuildsBlendExample) {
  const auto d = io::parse_descriptor(blend0op_document());
  EXPECT_EQ(d.construction, io::Construction::single);
  EXPECT_EQ(d.orders, (StepOrders{4, 2}));
  const auto t = io::build_transition(d);
  EXPECT_EQ(t.value(2.0), 0.0);
  EXPECT_DOUBLE_EQ(t.value(4.0), 3.0);
  EXPECT_EQ(t.value(1.5), 0.0);
  EXPECT_FALSE(io::relaxed_fd(d));
}

TEST(DescriptorTest, AllFunctionTypesAndConstructions) {
  auto doc = blend0op_document();
  const Interval outer(1.0, 5.0);
  const std::pair<const char*, double> cases[] = {
      {R"({"type": "polynomial", "coefficients": [1, 2]})", 1.0 + 2.0 * 3.0},
      {R"({"type": "sin", "frequency": 2, "amplitude": 3})", 3.0 * std::sin(6.0)},
      {R"({"type": "cos", "frequency": 1, "phase": 0.5})", std::cos(3.5)},
      {R"({"type": "exp", "rate": -1})", std::exp(-3.0)},
      {R"({"type": "constant", "value": 7})", 7.0}};
  for (const auto& [spec, at3] : cases) {
    const auto f = io::build_function(json::parse(spec), outer, {}, "left");
    EXPECT_NEAR(f.value(3.0), at3, 1e-14) << spec;
  }
  for (const char* c : {"single", "blends"}) {
    for (const char* op : {R"({"kind": "hermite"})",
                           R"({"kind": "multiplicative", "carrier": {"family": "trig", "m": 2}})",
                           R"({"kind": "multiplicative", "carrier": {"family": "expo"}})"}) {
      doc["construction"] = c;
      doc["operator"] = json::parse(op);
      const auto d = io::parse_descriptor(doc);
      EXPECT_NO_THROW(io::build_transition(d)) << c << " " << op;
    }
  }
  EXPECT_TRUE(io::relaxed_fd(io::parse_descriptor(doc)));
  // T_1 is flat only to order 3, below the requested (4,2).
  doc["operator"] = json::parse(R"({"kind": "multiplicative", "carrier": {"family": "trig", "m": 1}})");
  EXPECT_THROW(io::build_transition(io::parse_descriptor(doc)), io::DescriptorError);
  doc["construction"] = "hermite";
  doc.erase("operator");
  EXPECT_NEAR(io::build_transition(io::parse_descriptor(doc)).value(4.0), 3.0, 1e-12);
}

TEST(DescriptorTest, SampledFileRelativeToDescriptor) {
  const auto d = io::load_descriptor(std::string(FLATBLEND_EXAMPLES_DIR) + "/sampled_blends.json");
  const auto t = io::build_transition(d);
  // Left branch: the cubic 0.5 x^3 - x + 0.25 sampled on [0, 2].
  EXPECT_NEAR(t.value(0.3), 0.5 * 0.027 - 0.3 + 0.25, 1e-12);
  EXPECT_NEAR(t.value(1.8), 1.0 - 0.9, 1e-14);
}

TEST(DescriptorTest, RejectsInvalidDocuments) {
  auto expect_error = [](json doc, const std::string& fragment) {
    try {
      io::build_transition(io::parse_descriptor(doc));
      ADD_FAILURE() << "accepted: " << doc.dump();
    } catch (const io::DescriptorError& e) {
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
  };
  auto doc = blend0op_document();
  auto bad = doc;
  bad["inner"] = {0.5, 4};
  expect_error(bad, "a < a0 < b0 < b");
  bad = doc;
  bad["outer"] = {5, 1};
  expect_error(bad, "a < b");
  bad = doc;
  bad.erase("orders");
  expect_error(bad, "missing 'orders'");
  bad = doc;
  bad["orders"] = {-1, 2};
  expect_error(bad, "non-negative integer");
  bad = doc;
  bad["construction"] = "magic";
  expect_error(bad, "unknown value 'magic'");
  bad = doc;
  bad["operator"]["kind"] = "additive";
  expect_error(bad, "additive");
  bad = doc;
  bad["operator"]["carrier"]["family"] = "gauss";
  expect_error(bad, "gauss");
  bad = doc;
  bad["operator"]["carrier"].erase("orders");
  expect_error(bad, "missing 'orders'");
  bad = doc;
  bad["right"] = {{"type", "spline"}};
  expect_error(bad, "unknown function type 'spline'");
  bad = doc;
  bad["right"] = {{"type", "sin"}};
  expect_error(bad, "missing 'frequency'");
  bad = doc;
  bad["construction"] = "hermite";
  expect_error(bad, "not used by the hermite construction");
  bad = doc;
  bad["extra"] = 1;
  expect_error(bad, "unknown key 'extra'");
  bad = doc;
  bad["right"] = {{"type", "sampled"}, {"file", "/nonexistent.csv"}};
  EXPECT_THROW(io::build_transition(io::parse_descriptor(bad)), std::runtime_error);
  EXPECT_THROW(io::parse_descriptor(json::array()), io::DescriptorError);
}

TEST(DescriptorTest, SampledDataMustCoverOuterInterval) {
  const auto dir = std::filesystem::temp_directory_path() / "flatblend_test_io";
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "short.csv");
    for (int i = 0; i <= 20; ++i) f << 2.0 + i * 0.1 << ',' << i << '\n';
  }
  auto doc = blend0op_document();
  doc["left"] = {{"type", "sampled"}, {"file", "short.csv"}};
  EXPECT_THROW(io::build_transition(io::parse_descriptor(doc, dir)), io::DescriptorError);
  doc["left"] = {{"type", "sampled"}, {"file", "short.csv"}, {"interval", {1, 5}}};
  EXPECT_NO_THROW(io::build_transition(io::parse_descriptor(doc, dir)));
  std::filesystem::remove_all(dir);
}

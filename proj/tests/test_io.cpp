#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "elroc/error.hpp"
#include "elroc/io.hpp"
#include "elroc/scenarios.hpp"

using namespace elroc;

namespace {

ErrorCategory category_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.category();
  }
  return ErrorCategory::empty_interval;
}

std::string message_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return std::string(e.what()) + " @ " + e.context();
  }
  return {};
}

}  // namespace

TEST_CASE("number formatting round trips") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, i % 20 - 10);
    CHECK(parse_number(format_number(v)) == v);
  }
  CHECK(format_number(0.1) == "0.1");
  CHECK(std::isinf(parse_number(format_number(std::numeric_limits<double>::infinity()))));
  CHECK(std::isnan(parse_number("nan")));
  CHECK(category_of([] { parse_number("1.5x"); }) == ErrorCategory::input);
  CHECK(category_of([] { parse_number(""); }) == ErrorCategory::input);
}

TEST_CASE("dataset parsing") {
  const auto x = parse_dataset("class,value\n# note\n1,0.5\n\n2,1.5\n3,2.5\n3,3\n");
  CHECK(x.class1.size() == 1);
  CHECK(x.class3.size() == 2);
  const auto s = summarize(x);
  CHECK(s.n2 == 1);
  CHECK(s.means_ordered);
  CHECK(parse_dataset(dataset_to_csv(x)).class3.values()[1] == 3);

  CHECK(category_of([] { parse_dataset("1,0.5\n2,1\n"); }) == ErrorCategory::input);
  CHECK(message_of([] { parse_dataset("1,0.5\n2,1\n"); }).find("class 3") != std::string::npos);
  CHECK(message_of([] { parse_dataset("1,0.5\n4,1\n3,2\n"); }).find(":2") !=
        std::string::npos);
  CHECK(message_of([] { parse_dataset("1,0.5\n2,abc\n3,2\n"); }).find(":2") !=
        std::string::npos);
  CHECK(category_of([] { load_dataset("/nonexistent/file.csv"); }) == ErrorCategory::input);
}

TEST_CASE("example data file") {
  const auto x = load_dataset(std::string(ELROC_DATA_DIR) + "/example_3class.csv");
  const auto s = summarize(x);
  CHECK(s.n1 == 34);
  CHECK(s.n2 == 75);
  CHECK(s.n3 == 142);
  CHECK(s.means_ordered);
}

TEST_CASE("interval status names") {
  for (auto st : {IntervalStatus::ok, IntervalStatus::empty, IntervalStatus::point}) {
    CHECK(interval_status_from_string(to_string(st)) == st);
  }
  CHECK_THROWS_AS(interval_status_from_string("maybe"), Error);
}

TEST_CASE("result JSON round trips") {
  const auto x = sample_scenario(builtin_scenario(1), 30, 30, 30, RngSeed{4});
  const auto ci = interval_vus_with_scale(x, 0.05, 1.3, false);
  const auto ci2 = confidence_interval_from_json(to_json(ci));
  CHECK(ci2.lower == ci.lower);
  CHECK(ci2.upper == ci.upper);
  CHECK(ci2.status == ci.status);
  CHECK(to_json(ci2) == to_json(ci));

  const auto r3 = region3d_tcf(x, {0.8, 2.7}, 0.05, 11);
  const auto r3b = region3d_from_json(to_json(r3));
  CHECK(r3b.membership == r3.membership);
  CHECK(to_json(r3b) == to_json(r3));

  const auto r2 = region2d_pair_with_scale(x, 0.8, 2.7, 0.05, 1.0, 11, RngSeed{3});
  const auto r2b = region2d_from_json(to_json(r2));
  CHECK(r2b.membership == r2.membership);
  CHECK(to_json(r2b) == to_json(r2));
}

TEST_CASE("region CSV round trips") {
  const auto x = sample_scenario(builtin_scenario(1), 30, 30, 30, RngSeed{5});
  const auto r3 = region3d_tcf(x, {0.8, 2.7}, 0.05, 11);
  const auto csv3 = region3d_to_csv(r3, "# source=test\n");
  CHECK(csv3.rfind("# source=test", 0) == 0);
  const auto back3 = region3d_from_csv(csv3);
  CHECK(back3.membership == r3.membership);
  CHECK(back3.grid == r3.grid);

  const auto r2 = region2d_pair_with_scale(x, 0.8, 2.7, 0.05, 1.0, 11, RngSeed{3});
  const auto back2 = region2d_from_csv(region2d_to_csv(r2));
  CHECK(back2.membership == r2.membership);
  CHECK(region2d_to_csv(back2) == region2d_to_csv(r2));
  CHECK_THROWS_AS(region3d_from_csv("nonsense"), Error);
}

#include <random>

#include "doctest.h"
#include "elroc/empirical.hpp"
#include "elroc/error.hpp"
#include "oracles.hpp"

using namespace elroc;
using doctest::Approx;

namespace {

ThreeClassSample three(std::vector<double> a, std::vector<double> b, std::vector<double> c) {
  return {ClassSample(std::move(a)), ClassSample(std::move(b)), ClassSample(std::move(c))};
}

}  // namespace

TEST_CASE("class sample validates and sorts") {
  ClassSample s({3, 1, 2});
  CHECK(s.values()[0] == 1);
  CHECK(s.values()[2] == 3);
  CHECK(s.mean() == Approx(2.0));
  CHECK_THROWS_AS(ClassSample({}), Error);
  CHECK_THROWS_AS(ClassSample({1.0, std::nan("")}), Error);
  CHECK_THROWS_AS(ClassSample({1.0, HUGE_VAL}), Error);
}

TEST_CASE("step ecdf") {
  ClassSample s({1, 2, 3});
  CHECK(ecdf_eval(s, 2) == Approx(2.0 / 3));
  CHECK(ecdf_eval(s, 0.5) == 0);
  CHECK(ecdf_eval(s, 3) == 1);

  std::mt19937_64 rng(11);
  ClassSample normal(oracle::draw(rng, 1000, 0, 1));
  CHECK(std::abs(ecdf_eval(normal, 0) - 0.5) < 0.05);
}

TEST_CASE("smoothed ecdf") {
  CHECK(ecdf_eval_smoothed(ClassSample({0, 1}), 0.5) == Approx(0.75));
  CHECK(ecdf_eval_smoothed(ClassSample({0, 1}), 1) == 1);
  CHECK(ecdf_eval_smoothed(ClassSample({1, 2, 3}), 1.5) == Approx(0.5));
  CHECK(ecdf_eval_smoothed(ClassSample({1, 2, 3}), 0.99) == 0);
  CHECK(ecdf_eval_smoothed(ClassSample({1, 2, 3}), 7) == 1);
  // Duplicates share one knot at the larger i/n.
  CHECK(ecdf_eval_smoothed(ClassSample({1, 2, 2, 3}), 1.5) == Approx(0.25 + 0.5 * 0.5));
}

TEST_CASE("smoothed ecdf agrees with step ecdf at knots and is monotone") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    ClassSample s(oracle::draw_int(rng, 1 + rep % 9, 0, 6));
    for (double v : s.values()) CHECK(ecdf_eval_smoothed(s, v) == ecdf_eval(s, v));
    double prev = -1;
    for (double t = -1; t <= 7; t += 0.01) {
      const double f = ecdf_eval_smoothed(s, t);
      CHECK(f >= prev);
      CHECK(f >= 0);
      CHECK(f <= 1);
      prev = f;
    }
  }
}

TEST_CASE("step ecdf takes values k/n and is non-decreasing") {
  std::mt19937_64 rng(5);
  ClassSample s(oracle::draw(rng, 17, 0, 1));
  double prev = 0;
  for (double t = -4; t <= 4; t += 0.003) {
    const double f = ecdf_eval(s, t);
    const double k = f * 17;
    CHECK(std::abs(k - std::round(k)) < 1e-12);
    CHECK(f >= prev);
    prev = f;
  }
}

TEST_CASE("empirical quantile") {
  ClassSample s({1, 2, 3, 4});
  CHECK(empirical_quantile(s, 0.5) == 2);
  CHECK(empirical_quantile(s, 1.0) == 4);
  CHECK(empirical_quantile(s, 0.51) == 3);
  CHECK(empirical_quantile(ClassSample({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}), 0.7) == 7);
  CHECK_THROWS_AS(empirical_quantile(s, 0.0), Error);
  CHECK_THROWS_AS(empirical_quantile(s, 1.01), Error);
}

TEST_CASE("empirical quantile matches the infimum definition") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.001, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    auto v = oracle::draw_int(rng, 1 + rep % 12, 0, 9);
    ClassSample s(v);
    const double p = u(rng);
    CHECK(empirical_quantile(s, p) == oracle::quantile_scan(v, p));
  }
}

TEST_CASE("quantile and ecdf round trip on distinct values") {
  std::mt19937_64 rng(9);
  ClassSample s(oracle::draw(rng, 40, 0, 1));
  for (double y : s.values()) CHECK(empirical_quantile(s, ecdf_eval(s, y)) == y);
}

TEST_CASE("smoothed quantile inverts the smoothed ecdf") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    ClassSample s(oracle::draw_int(rng, 2 + rep % 15, 0, 20));
    const double p = u(rng);
    const double t = empirical_quantile_smoothed(s, p);
    const double f_min = ecdf_eval(s, s.min());
    if (p > f_min) {
      CHECK(ecdf_eval_smoothed(s, t) == Approx(p).epsilon(1e-12));
    } else {
      CHECK(t == s.min());
    }
    CHECK(t <= empirical_quantile(s, p));
  }
}

TEST_CASE("p_hat") {
  ClassSample s2({1, 2, 3});
  CHECK(p_hat(s2, {1, 3}) == Approx(2.0 / 3));
  CHECK(p_hat(s2, {5, 6}) == 0);
  CHECK(p_hat(ClassSample({0.5, 1.5, 2.5, 3.5}), {1, 3}) == Approx(0.5));
}

TEST_CASE("vus estimator examples") {
  CHECK(vus_estimate(three({1}, {2}, {3})) == 1);
  CHECK(vus_estimate(three({3}, {2}, {1})) == 0);
  CHECK(vus_estimate(three({1, 4}, {2, 5}, {3, 6})) == Approx(4.0 / 8));
  CHECK(vus_estimate_ties(three({1}, {1}, {2})) == Approx(0.5));
  CHECK(vus_estimate_ties(three({1}, {1}, {1})) == Approx(1.0 / 6));
  const double brute = oracle::vus_triple_loop({1, 2}, {2, 3}, {3, 4}, true);
  CHECK(vus_estimate_ties(three({1, 2}, {2, 3}, {3, 4})) == brute);
}

TEST_CASE("vus estimators equal the triple loop exactly") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 200; ++rep) {
    const auto a = oracle::draw_int(rng, 1 + rep % 8, 0, 6);
    const auto b = oracle::draw_int(rng, 1 + (rep / 8) % 8, 2, 8);
    const auto c = oracle::draw_int(rng, 1 + (rep / 3) % 8, 3, 10);
    const auto x = three(a, b, c);
    CHECK(vus_estimate(x) == oracle::vus_triple_loop(a, b, c, false));
    CHECK(vus_estimate_ties(x) == oracle::vus_triple_loop(a, b, c, true));
  }
}

TEST_CASE("vus estimators agree without cross-class ties") {
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 50; ++rep) {
    const auto x = three(oracle::draw(rng, 7, 0, 1), oracle::draw(rng, 6, 1, 1),
                         oracle::draw(rng, 8, 2, 1));
    CHECK(vus_estimate(x) == vus_estimate_ties(x));
  }
}

TEST_CASE("vus is invariant under increasing transforms") {
  std::mt19937_64 rng(23);
  auto a = oracle::draw(rng, 20, 0, 1), b = oracle::draw(rng, 25, 1, 1),
       c = oracle::draw(rng, 30, 2, 1);
  const double v = vus_estimate(three(a, b, c));
  auto f = [](std::vector<double> s) {
    for (double& x : s) x = std::exp(3 * x) + 1;
    return s;
  };
  CHECK(vus_estimate(three(f(a), f(b), f(c))) == v);
}

TEST_CASE("hum estimator") {
  std::vector<ClassSample> two{ClassSample({1, 3}), ClassSample({2, 4})};
  CHECK(hum_estimate(two) == Approx(0.75));
  std::vector<ClassSample> four{ClassSample({1}), ClassSample({2}), ClassSample({3}),
                                ClassSample({4})};
  CHECK(hum_estimate(four) == 1);
  std::vector<ClassSample> one{ClassSample({1})};
  CHECK_THROWS_AS(hum_estimate(one), Error);

  std::mt19937_64 rng(24);
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = oracle::draw_int(rng, 1 + rep % 6, 0, 5);
    const auto b = oracle::draw_int(rng, 1 + rep % 5, 1, 6);
    const auto c = oracle::draw_int(rng, 1 + rep % 7, 2, 7);
    std::vector<ClassSample> m{ClassSample(a), ClassSample(b), ClassSample(c)};
    CHECK(hum_estimate(m) == Approx(oracle::vus_triple_loop(a, b, c, false)).epsilon(1e-14));
  }
}

TEST_CASE("mean ordering predicate") {
  CHECK(three({0}, {1}, {2}).means_ordered());
  CHECK_FALSE(three({0}, {0}, {2}).means_ordered());
}

#include <cmath>
#include <random>

#include "doctest.h"
#include "elroc/error.hpp"
#include "elroc/scenarios.hpp"

using namespace elroc;
using doctest::Approx;

TEST_CASE("builtin scenarios carry the reference rows") {
  const auto all = builtin_scenarios();
  REQUIRE(all.size() == 10);
  const auto& s1 = builtin_scenario(1);
  CHECK(s1.d1.family == DistFamily::normal);
  CHECK(s1.truth.t10 == 0.842);
  CHECK(s1.truth.t20 == 2.680);
  CHECK(s1.truth.theta20 == 0.5);
  CHECK(s1.truth.gamma0 == 0.772);
  const auto& s3 = builtin_scenario(3);
  CHECK(s3.truth.t10 == 1.282);
  CHECK(s3.truth.t20 == 5.626);
  CHECK(s3.truth.gamma0 == 0.959);
  const auto& s10 = builtin_scenario(10);
  CHECK(s10.truth.theta10 == 0.5);
  CHECK(s10.truth.theta20 == 0.674);
  CHECK(s10.truth.theta30 == 0.522);
  CHECK(s10.truth.gamma0 == 0.544);
  CHECK_THROWS_AS(builtin_scenario(11), Error);
  for (const auto& s : all) {
    CHECK(s.d1.mean() < s.d2.mean());
    CHECK(s.d2.mean() < s.d3.mean());
    CHECK(s.truth.t10 < s.truth.t20);
  }
}

TEST_CASE("scenario sampling") {
  const auto& s1 = builtin_scenario(1);
  const auto big = sample_scenario(s1, 100000, 100000, 100000, RngSeed{1});
  CHECK(std::abs(big.class1.mean() - 0.0) < 0.02);
  CHECK(std::abs(big.class2.mean() - 2.5) < 0.02);
  CHECK(std::abs(big.class3.mean() - 3.69) < 0.02);

  const auto beta = sample_scenario(builtin_scenario(7), 2000, 2000, 2000, RngSeed{2});
  for (const auto* c : {&beta.class1, &beta.class2, &beta.class3}) {
    CHECK(c->min() > 0);
    CHECK(c->max() < 1);
  }
  for (int id = 1; id <= 10; ++id) {
    const auto& s = builtin_scenario(id);
    const auto x = sample_scenario(s, 50000, 50000, 50000, RngSeed{3});
    CHECK(x.class2.mean() == Approx(s.d2.mean()).epsilon(0.03));
  }
  const auto a = sample_scenario(s1, 20, 30, 40, RngSeed{9});
  const auto b = sample_scenario(s1, 20, 30, 40, RngSeed{9});
  CHECK(std::equal(a.class3.values().begin(), a.class3.values().end(),
                   b.class3.values().begin()));
}

TEST_CASE("distribution specs") {
  for (const auto& s : builtin_scenarios()) {
    for (const auto* d : {&s.d1, &s.d2, &s.d3}) {
      for (double p : {0.01, 0.2, 0.5, 0.8, 0.99}) {
        CHECK(d->cdf(d->quantile(p)) == Approx(p).epsilon(1e-9));
      }
      CHECK(d->pdf(d->quantile(0.5)) > 0);
    }
  }
  CHECK_THROWS_AS(DistSpec::normal(0, -1).validate(), Error);
  CHECK_THROWS_AS(DistSpec::normal_mixture(1.5, 0, 1, 1, 1).validate(), Error);
  CHECK_THROWS_AS(DistSpec::gamma(0, 1).validate(), Error);
  CHECK(DistSpec::gamma(6, 12).mean() == Approx(0.5));
}

TEST_CASE("recomputed truth against closed forms") {
  const auto t2 = recompute_truth(builtin_scenario(2));
  const double z20 = -0.8416212335729143;  // Phi^-1(0.2)
  CHECK(t2.t20 == Approx(5.5 + 1.2 * z20).epsilon(1e-10));
  CHECK(t2.t10 == Approx(-z20).epsilon(1e-10));
  const auto t5 = recompute_truth(builtin_scenario(5));
  CHECK(std::abs(t5.theta20 - 0.8) < 0.005);
  CHECK(std::abs(t5.t20 - 6.873) < 0.01);
}

TEST_CASE("VUS truth: quadrature, library Monte Carlo and a direct simulation agree") {
  const auto& s1 = builtin_scenario(1);
  const double quad = recompute_truth(s1).gamma0;
  TruthOptions mc;
  mc.vus_method = VusMethod::monte_carlo;
  mc.precision_n = 1'000'000;
  CHECK(std::abs(recompute_truth(s1, mc).gamma0 - quad) < 0.003);

  std::mt19937_64 rng(77);
  std::normal_distribution<double> y1(0, 1), y2(2.5, 1.1), y3(3.69, 1.2);
  const int n = 1'000'000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const double a = y1(rng), b = y2(rng), c = y3(rng);
    hits += a < b && b < c;
  }
  CHECK(std::abs(static_cast<double>(hits) / n - quad) < 0.003);
  CHECK(std::abs(quad - 0.722) < 0.003);
}

TEST_CASE("truth check: errata and known mismatches") {
  const auto c1 = check_truth(builtin_scenario(1), recompute_truth(builtin_scenario(1)));
  CHECK(c1.pass());
  CHECK(c1.summary().find("0.722") != std::string::npos);
  for (int id : {3, 5, 6, 8, 9, 10}) {
    CHECK(check_truth(builtin_scenario(id), recompute_truth(builtin_scenario(id))).pass());
  }
  for (int id : {2, 4, 7}) {
    const auto c = check_truth(builtin_scenario(id), recompute_truth(builtin_scenario(id)));
    CHECK_FALSE(c.pass());
    CHECK(c.summary().find("theta20") != std::string::npos);
  }
  try {
    scenario_truth(builtin_scenario(2));
    FAIL("expected convention_mismatch");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::convention_mismatch);
  }
  CHECK(scenario_truth(builtin_scenario(3)).theta20 == Approx(0.9).epsilon(0.01));
}

TEST_CASE("truth at other parameter values") {
  const auto& s1 = builtin_scenario(1);
  const auto base = recompute_truth(s1);
  const auto same = truth_at_tcfs(s1, base.theta10, base.theta30);
  CHECK(same.t10 == base.t10);
  CHECK(same.theta20 == base.theta20);
  const auto other = truth_at_tcfs(s1, 0.7, 0.6);
  CHECK(s1.d1.cdf(other.t10) == Approx(0.7).epsilon(1e-10));
  CHECK(1 - s1.d3.cdf(other.t20) == Approx(0.6).epsilon(1e-10));
  const auto pair = truth_at_theta1_t2(s1, 0.8, 3.0);
  CHECK(pair.t20 == 3.0);
  CHECK(pair.theta30 == Approx(1 - s1.d3.cdf(3.0)));
  CHECK(pair.theta20 == Approx(s1.d2.cdf(3.0) - s1.d2.cdf(pair.t10)));
}

TEST_CASE("scenario JSON round trip") {
  const auto all = builtin_scenarios();
  const auto text = scenarios_to_json(all);
  const auto back = scenarios_from_json(text);
  REQUIRE(back.size() == all.size());
  CHECK(scenarios_to_json(back) == text);
  CHECK(back[9].d2.params == all[9].d2.params);
  CHECK(back[0].errata.size() == 1);
  CHECK_THROWS_AS(scenarios_from_json("[{\"id\": 1}]"), Error);
  CHECK_THROWS_AS(scenarios_from_json("not json"), Error);
}

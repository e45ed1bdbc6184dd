// Acceptance checks, one PASS/FAIL line per criterion. Optional arguments
// select criteria by number (e.g. `acceptance 3 7`); none runs all of them.

#include <boost/math/special_functions/gamma.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "elroc/empirical.hpp"
#include "elroc/error.hpp"
#include "elroc/io.hpp"
#include "elroc/pivots.hpp"
#include "elroc/regions.hpp"
#include "elroc/scenarios.hpp"
#include "elroc/simulation.hpp"

using namespace elroc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string vec(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + ")";
}

ThreeClassSample three(std::vector<double> a, std::vector<double> b, std::vector<double> c) {
  return {ClassSample(std::move(a)), ClassSample(std::move(b)), ClassSample(std::move(c))};
}

Outcome coverage_check(CoverageMethod method, int scenario, std::size_t n, std::size_t R,
                       std::vector<double> levels, std::vector<double> target,
                       double tolerance) {
  ExperimentPlan plan;
  plan.method = method;
  plan.scenarios = {scenario};
  plan.sizes = {{n, n, n}};
  plan.levels = levels;
  plan.replications = R;
  plan.bootstrap_B = 200;
  plan.seed = RngSeed{20240518};
  const auto cell = run_coverage(plan).cells.at(0);
  bool pass = true;
  for (std::size_t k = 0; k < target.size(); ++k) {
    pass = pass && std::abs(cell.coverage[k] - target[k]) <= tolerance;
  }
  std::ostringstream d;
  d << to_string(method) << " scenario " << scenario << " n=" << n << " R=" << R
    << " levels " << vec(levels) << ": coverage " << vec(cell.coverage) << " vs "
    << vec(target) << " +/- " << tolerance << " (failed replicates "
    << cell.failures.total() << ")";
  return {pass, d.str()};
}

Outcome c1() {
  return coverage_check(CoverageMethod::region3d, 1, 50, 2000, {0.90, 0.95, 0.99},
                        {0.902, 0.950, 0.991}, 0.02);
}

Outcome c2() {
  return coverage_check(CoverageMethod::region3d, 3, 30, 2000, {0.99}, {0.874}, 0.03);
}

Outcome c3() {
  return coverage_check(CoverageMethod::ci_tcf2, 1, 30, 1000, {0.90, 0.95, 0.99},
                        {0.900, 0.949, 0.988}, 0.025);
}

Outcome c4() {
  return coverage_check(CoverageMethod::ci_vus, 1, 30, 1000, {0.90, 0.95, 0.99},
                        {0.896, 0.945, 0.985}, 0.025);
}

Outcome c5() {
  return coverage_check(CoverageMethod::region2d, 2, 50, 1000, {0.90, 0.95, 0.99},
                        {0.878, 0.939, 0.989}, 0.03);
}

Outcome c6() {
  bool pass = true;
  std::string failed;
  bool erratum_resolved = false;
  for (const auto& s : builtin_scenarios()) {
    const auto check = check_truth(s, recompute_truth(s));
    if (!check.pass()) {
      pass = false;
      failed += " [" + check.summary() + "]";
    }
    if (s.id == 1) erratum_resolved = check.pass() && !s.errata.empty();
  }
  pass = pass && erratum_resolved;
  std::string d = "tolerances theta 0.005, t 0.01, gamma 0.005; scenario 1 gamma erratum ";
  d += erratum_resolved ? "resolved" : "unresolved";
  if (!failed.empty()) d += "; mismatches:" + failed;
  return {pass, d};
}

Outcome c7() {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  double worst = 0;
  int finite = 0, bad_infinite = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n1 = 2 + rep % 4, n2 = 2 + (rep / 4) % 4, n3 = 2 + (rep / 16) % 4;
    auto a = oracle::draw(rng, n1, 0, 1), b = oracle::draw(rng, n2, 1, 1),
         c = oracle::draw(rng, n3, 2, 1);
    // Redraw thresholds until every class has observations on both sides, so
    // most instances have a finite maximum; the rest still check infeasibility.
    double t1 = 0, t2 = 0;
    for (int tries = 0; tries < 200; ++tries) {
      t1 = oracle::draw(rng, 1, 0.5, 0.8)[0];
      t2 = t1 + std::abs(oracle::draw(rng, 1, 1.0, 0.8)[0]) + 1e-3;
      const double f1 = oracle::ecdf_count(a, t1);
      const double f2 = oracle::ecdf_count(b, t2) - oracle::ecdf_count(b, t1);
      const double f3 = 1 - oracle::ecdf_count(c, t2);
      if (f1 > 0 && f1 < 1 && f2 > 0 && f2 < 1 && f3 > 0 && f3 < 1) break;
    }
    const TcfTriple th{u(rng), u(rng), u(rng)};
    const double closed = ell_tcf_triple(three(a, b, c), {t1, t2}, th).value;
    const double dual =
        oracle::el_three_class_dual(a, b, c, t1, t2, th.theta1, th.theta2, th.theta3);
    if (std::isfinite(dual)) {
      ++finite;
      worst = std::max(worst, std::abs(closed - dual));
    } else if (std::isfinite(closed)) {
      ++bad_infinite;
    }
  }
  const bool pass = worst <= 1e-6 && bad_infinite == 0;
  return {pass, "200 instances (n_d <= 5), " + std::to_string(finite) +
                    " feasible; max |closed - constrained max| = " + sci(worst) +
                    " (tol 1e-6); infeasibility disagreements " + std::to_string(bad_infinite)};
}

Outcome c8() {
  const auto& s = builtin_scenario(1);
  const auto truth = recompute_truth(s);
  const std::size_t n = 2000, reps = 2000;
  std::vector<double> pivots;
  pivots.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto x = sample_scenario(s, n, n, n, derive_seed(RngSeed{8}, {r}));
    pivots.push_back(ell_tcf_triple(x, {truth.t10, truth.t20},
                                    {truth.theta10, truth.theta20, truth.theta30})
                         .value);
  }
  double d = 0;
  const double p = oracle::ks_pvalue(
      pivots, [](double v) { return boost::math::gamma_p(1.5, v / 2); }, &d);
  return {p > 0.01, "scenario 1, n_d=2000, 2000 replicates: KS D=" + fmt(d, 4) +
                        " p=" + fmt(p, 4) + " vs chi^2_3 (need p > 0.01)"};
}

Outcome c9() {
  std::mt19937_64 rng(21);
  int mismatches = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto a = oracle::draw_int(rng, 1 + rep % 8, 0, 6);
    const auto b = oracle::draw_int(rng, 1 + (rep / 8) % 8, 2, 8);
    const auto c = oracle::draw_int(rng, 1 + (rep / 3) % 8, 3, 10);
    const auto x = three(a, b, c);
    mismatches += vus_estimate(x) != oracle::vus_triple_loop(a, b, c, false);
    mismatches += vus_estimate_ties(x) != oracle::vus_triple_loop(a, b, c, true);
  }
  const auto sep = three({0, 1, 2}, {3, 4}, {5, 6, 7, 8});
  const auto rev = three({5, 6, 7, 8}, {3, 4}, {0, 1, 2});
  const bool ends = vus_estimate(sep) == 1.0 && vus_estimate_ties(sep) == 1.0 &&
                    vus_estimate(rev) == 0.0 && vus_estimate_ties(rev) == 0.0;
  return {mismatches == 0 && ends,
          "200 instances x {plain, ties}: " + std::to_string(mismatches) +
              " mismatches (need exact equality); separation 1/0 " + (ends ? "exact" : "wrong")};
}

Outcome c10() {
  const auto x = load_dataset(std::string(ELROC_DATA_DIR) + "/example_3class.csv");
  std::vector<std::string> problems;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  };
  need(parse_dataset(dataset_to_csv(x)).total_size() == x.total_size(), "dataset round trip");

  BootstrapOptions o;
  o.B = 200;
  o.seed = RngSeed{42};
  const std::vector<double> alphas{0.10, 0.05, 0.01};
  for (const std::string kind : {"ci-vus", "ci-tcf2"}) {
    auto run = [&](double alpha) {
      return kind == "ci-vus" ? interval_vus(x, alpha, o, false)
                              : interval_tcf2(x, 0.8, 0.6, alpha, o);
    };
    std::vector<ConfidenceInterval> cis;
    for (double a : alphas) cis.push_back(run(a));
    for (const auto& ci : cis) {
      need(ci.status == IntervalStatus::ok, kind + " status ok");
      need(0 <= ci.lower && ci.lower <= ci.upper && ci.upper <= 1, kind + " bounds in [0,1]");
      need(ci.contains(ci.point_estimate), kind + " contains estimate");
      need(std::isfinite(ci.w_hat) && ci.w_hat > 0, kind + " finite scale");
      need(to_json(confidence_interval_from_json(to_json(ci))) == to_json(ci),
           kind + " JSON round trip");
    }
    for (std::size_t k = 1; k < cis.size(); ++k) {
      need(cis[k].lower <= cis[k - 1].lower && cis[k - 1].upper <= cis[k].upper,
           kind + " nesting across alpha");
    }
    need(to_json(run(0.05)).dump() == to_json(cis[1]).dump(), kind + " determinism per seed");
  }
  std::string d = "data/example_3class.csv: ci-vus and ci-tcf2 at alpha (0.10, 0.05, 0.01)";
  if (problems.empty()) {
    d += " well-formed, contain estimates, nested, deterministic, round-trip";
  } else {
    d += "; failed:";
    for (const auto& p : problems) d += " " + p + ";";
  }
  return {problems.empty(), d};
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::function<Outcome()>> criteria{
      {1, c1}, {2, c2}, {3, c3}, {4, c4}, {5, c5},
      {6, c6}, {7, c7}, {8, c8}, {9, c9}, {10, c10}};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s  %s  [%.1fs]\n", id, out.pass ? "PASS" : "FAIL",
                out.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !out.pass;
  }
  return failures == 0 ? 0 : 1;
}

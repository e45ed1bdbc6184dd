#include "elroc/simulation.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "elroc/bootstrap.hpp"
#include "elroc/error.hpp"
#include "elroc/io.hpp"
#include "elroc/parallel.hpp"
#include "elroc/pivots.hpp"
#include "elroc/regions.hpp"
#include "json.hpp"

namespace elroc {

std::string to_string(CoverageMethod m) {
  switch (m) {
    case CoverageMethod::region3d: return "region3d";
    case CoverageMethod::ci_tcf2: return "ci_tcf2";
    case CoverageMethod::ci_vus: return "ci_vus";
    case CoverageMethod::region2d: return "region2d";
  }
  return "unknown";
}

CoverageMethod coverage_method_from_string(const std::string& name) {
  for (auto m : {CoverageMethod::region3d, CoverageMethod::ci_tcf2, CoverageMethod::ci_vus,
                 CoverageMethod::region2d}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorCategory::validation, "unknown coverage method '" + name + "'");
}

namespace {

bool uses_bootstrap(CoverageMethod m) { return m != CoverageMethod::region3d; }

const ScenarioSpec& find_scenario(const ExperimentPlan& plan, int id) {
  for (const auto& s : plan.custom_scenarios) {
    if (s.id == id) return s;
  }
  return builtin_scenario(id);
}

}  // namespace

void ExperimentPlan::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCategory::validation, msg); };
  if (scenarios.empty()) fail("plan lists no scenarios");
  if (sizes.empty()) fail("plan lists no sample sizes");
  for (const auto& n : sizes) {
    if (n.n1 == 0 || n.n2 == 0 || n.n3 == 0) fail("sample sizes must be >= 1");
  }
  if (levels.empty()) fail("plan lists no nominal levels");
  for (double l : levels) {
    if (!(l > 0.0 && l < 1.0)) fail("nominal levels must lie in (0, 1)");
  }
  if (replications < 100) fail("replications must be >= 100");
  if (uses_bootstrap(method) && bootstrap_B < 50) fail("bootstrap B must be >= 50");
  if (method == CoverageMethod::region2d && mc_draws < 100) fail("mc_draws must be >= 100");
  for (auto p : {theta1, theta3}) {
    if (p && !(*p > 0.0 && *p < 1.0)) fail("fixed TCFs must lie in (0, 1)");
  }
  if (t2 && method != CoverageMethod::region2d) fail("t2 applies to region2d plans only");
  if (method == CoverageMethod::region2d && theta3) {
    fail("region2d fixes theta1 and t2; theta3 is estimated");
  }
  for (int id : scenarios) find_scenario(*this, id);
}

ScenarioTruth coverage_target(const ExperimentPlan& plan, const ScenarioSpec& spec) {
  const ScenarioTruth base = recompute_truth(spec);
  switch (plan.method) {
    case CoverageMethod::region3d:
    case CoverageMethod::ci_tcf2: {
      if (!plan.theta1 && !plan.theta3) return base;
      ScenarioTruth t = truth_at_tcfs(spec, plan.theta1.value_or(base.theta10),
                                      plan.theta3.value_or(base.theta30));
      t.gamma0 = base.gamma0;
      return t;
    }
    case CoverageMethod::ci_vus:
      return base;
    case CoverageMethod::region2d: {
      ScenarioTruth t = truth_at_theta1_t2(spec, plan.theta1.value_or(base.theta10),
                                           plan.t2.value_or(base.t20));
      t.gamma0 = base.gamma0;
      return t;
    }
  }
  return base;
}

namespace {

enum class Failure { none, ordering_infeasible, degenerate_scale, domain, boundary_estimate };

struct ReplicateOutcome {
  Failure failure = Failure::none;
  std::vector<std::uint8_t> covered;
  std::vector<std::uint8_t> empty;
  std::size_t rejected = 0;
};

Failure classify(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::ordering_infeasible: return Failure::ordering_infeasible;
    case ErrorCategory::degenerate_scale: return Failure::degenerate_scale;
    case ErrorCategory::boundary_estimate: return Failure::boundary_estimate;
    case ErrorCategory::domain: return Failure::domain;
    default: throw e;
  }
}

ReplicateOutcome run_replicate(const ExperimentPlan& plan, const ScenarioSpec& spec,
                               const ScenarioTruth& target, SampleSizes n,
                               const std::vector<double>& chi2_1, const std::vector<double>& chi2_3,
                               RngSeed seed) {
  ReplicateOutcome out;
  const std::size_t L = plan.levels.size();
  out.covered.assign(L, 0);
  out.empty.assign(L, 0);
  const ThreeClassSample x = sample_scenario(spec, n.n1, n.n2, n.n3, derive_seed(seed, {0}));
  BootstrapOptions boot;
  boot.B = plan.bootstrap_B;
  boot.seed = derive_seed(seed, {1});
  try {
    switch (plan.method) {
      case CoverageMethod::region3d: {
        const double pivot = ell_tcf_triple(x, {target.t10, target.t20},
                                            {target.theta10, target.theta20, target.theta30})
                                 .value;
        for (std::size_t l = 0; l < L; ++l) out.covered[l] = pivot <= chi2_3[l];
        break;
      }
      case CoverageMethod::ci_tcf2: {
        const ScaleEstimate s = estimate_w_tcf2(x, target.theta10, target.theta30, boot);
        out.rejected = s.rejected_ordering;
        const double pivot =
            ell_star_tcf2(x, target.theta10, target.theta20, target.theta30).value;
        const auto [t1, t2] = plug_in_thresholds(x, target.theta10, target.theta30);
        const double c0 = tcf_term1(x, t1, target.theta10, EcdfKind::step).value +
                          tcf_term3(x, t2, target.theta30, EcdfKind::step).value;
        for (std::size_t l = 0; l < L; ++l) {
          out.covered[l] = s.w_hat * pivot <= chi2_1[l];
          out.empty[l] = s.w_hat * c0 > chi2_1[l];
        }
        break;
      }
      case CoverageMethod::ci_vus: {
        const ScaleEstimate s = estimate_w_vus(x, plan.ties, boot);
        out.rejected = s.rejected_ordering;
        const double gamma_hat = plan.ties ? vus_estimate_ties(x) : vus_estimate(x);
        const double pivot = ell_vus(gamma_hat, x.total_size(), target.gamma0).value;
        for (std::size_t l = 0; l < L; ++l) out.covered[l] = s.w_hat * pivot <= chi2_1[l];
        break;
      }
      case CoverageMethod::region2d: {
        const ScaleEstimate s = estimate_w_pair(x, target.theta10, target.t20, boot);
        out.rejected = s.rejected_ordering;
        const double pivot = ell_star2_pair(x, target.theta10, target.theta20,
                                            target.theta30, target.t20)
                                 .value;
        for (std::size_t l = 0; l < L; ++l) {
          const double c = mc_quantile_mixture(s.w_hat, 1.0 - plan.levels[l], plan.mc_draws,
                                               mixture_seed(boot.seed));
          out.covered[l] = pivot <= c;
        }
        break;
      }
    }
  } catch (const Error& e) {
    out.failure = classify(e);
  }
  return out;
}

}  // namespace

CoverageResult run_coverage(const ExperimentPlan& plan) {
  plan.validate();
  CoverageResult result;
  result.plan = plan;
  const std::size_t threads = plan.threads ? plan.threads : default_thread_count();
  const std::size_t L = plan.levels.size();
  std::vector<double> chi2_1(L), chi2_3(L);
  for (std::size_t l = 0; l < L; ++l) {
    chi2_1[l] = chi2_quantile(1, plan.levels[l]);
    chi2_3[l] = chi2_quantile(3, plan.levels[l]);
  }
  for (int id : plan.scenarios) {
    const ScenarioSpec& spec = find_scenario(plan, id);
    const ScenarioTruth target = coverage_target(plan, spec);
    for (std::size_t si = 0; si < plan.sizes.size(); ++si) {
      const SampleSizes n = plan.sizes[si];
      std::vector<ReplicateOutcome> outcomes(plan.replications);
      parallel_for(plan.replications, threads, [&](std::size_t r) {
        const RngSeed seed = derive_seed(
            plan.seed, {static_cast<std::uint64_t>(id), n.n1, n.n2, n.n3, r});
        outcomes[r] = run_replicate(plan, spec, target, n, chi2_1, chi2_3, seed);
      });

      CoverageCell cell;
      cell.scenario = id;
      cell.sizes = n;
      cell.target = target;
      cell.levels = plan.levels;
      cell.covered.assign(L, 0);
      cell.empty_interval.assign(L, 0);
      cell.replications = plan.replications;
      for (const auto& o : outcomes) {
        switch (o.failure) {
          case Failure::ordering_infeasible: ++cell.failures.ordering_infeasible; continue;
          case Failure::degenerate_scale: ++cell.failures.degenerate_scale; continue;
          case Failure::domain: ++cell.failures.domain; continue;
          case Failure::boundary_estimate: ++cell.failures.boundary_estimate; continue;
          case Failure::none: break;
        }
        cell.rejected_ordering += o.rejected;
        for (std::size_t l = 0; l < L; ++l) {
          cell.covered[l] += o.covered[l];
          cell.empty_interval[l] += o.empty[l];
        }
      }
      cell.effective = cell.replications - cell.failures.total();
      for (std::size_t l = 0; l < L; ++l) {
        const double c = cell.effective
                             ? static_cast<double>(cell.covered[l]) / static_cast<double>(cell.effective)
                             : 0.0;
        cell.coverage.push_back(c);
        cell.standard_error.push_back(
            cell.effective ? std::sqrt(c * (1.0 - c) / static_cast<double>(cell.effective)) : 0.0);
      }
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Serialisation

namespace {

nlohmann::json plan_json(const ExperimentPlan& plan) {
  nlohmann::json sizes = nlohmann::json::array();
  for (const auto& n : plan.sizes) sizes.push_back({n.n1, n.n2, n.n3});
  nlohmann::json j = {{"method", to_string(plan.method)},
                      {"scenarios", plan.scenarios},
                      {"sizes", sizes},
                      {"levels", plan.levels},
                      {"replications", plan.replications},
                      {"bootstrap_B", plan.bootstrap_B},
                      {"ties", plan.ties},
                      {"mc_draws", plan.mc_draws},
                      {"seed", plan.seed.value},
                      {"threads", plan.threads}};
  if (plan.theta1) j["theta1"] = *plan.theta1;
  if (plan.theta3) j["theta3"] = *plan.theta3;
  if (plan.t2) j["t2"] = *plan.t2;
  if (!plan.custom_scenarios.empty()) {
    j["custom_scenarios"] = nlohmann::json::parse(scenarios_to_json(plan.custom_scenarios));
  }
  return j;
}

ExperimentPlan plan_from(const nlohmann::json& j) {
  ExperimentPlan plan;
  plan.method = coverage_method_from_string(j.at("method").get<std::string>());
  plan.scenarios = j.at("scenarios").get<std::vector<int>>();
  plan.sizes.clear();
  for (const auto& s : j.at("sizes")) {
    const auto v = s.get<std::vector<std::size_t>>();
    if (v.size() != 3) throw Error(ErrorCategory::input, "each size entry needs three counts");
    plan.sizes.push_back({v[0], v[1], v[2]});
  }
  if (j.contains("levels")) plan.levels = j["levels"].get<std::vector<double>>();
  plan.replications = j.value("replications", plan.replications);
  plan.bootstrap_B = j.value("bootstrap_B", plan.bootstrap_B);
  plan.ties = j.value("ties", false);
  plan.mc_draws = j.value("mc_draws", plan.mc_draws);
  plan.seed.value = j.value("seed", plan.seed.value);
  plan.threads = j.value("threads", std::size_t{0});
  if (j.contains("theta1")) plan.theta1 = j["theta1"].get<double>();
  if (j.contains("theta3")) plan.theta3 = j["theta3"].get<double>();
  if (j.contains("t2")) plan.t2 = j["t2"].get<double>();
  if (j.contains("custom_scenarios")) {
    plan.custom_scenarios = scenarios_from_json(j["custom_scenarios"].dump());
  }
  return plan;
}

nlohmann::json cell_json(const CoverageCell& c) {
  const auto& t = c.target;
  return {{"scenario", c.scenario},
          {"sizes", {c.sizes.n1, c.sizes.n2, c.sizes.n3}},
          {"target",
           {{"t10", t.t10},
            {"t20", t.t20},
            {"theta10", t.theta10},
            {"theta20", t.theta20},
            {"theta30", t.theta30},
            {"gamma0", t.gamma0}}},
          {"levels", c.levels},
          {"covered", c.covered},
          {"coverage", c.coverage},
          {"standard_error", c.standard_error},
          {"empty_interval", c.empty_interval},
          {"replications", c.replications},
          {"effective", c.effective},
          {"failures",
           {{"ordering_infeasible", c.failures.ordering_infeasible},
            {"degenerate_scale", c.failures.degenerate_scale},
            {"domain", c.failures.domain},
            {"boundary_estimate", c.failures.boundary_estimate}}},
          {"rejected_ordering", c.rejected_ordering}};
}

constexpr const char* kCsvHeader =
    "method,scenario,n1,n2,n3,level,replications,effective,covered,coverage,se,"
    "empty_interval,ordering_infeasible,degenerate_scale,domain,boundary_estimate,"
    "rejected_ordering,t10,t20,theta10,theta20,theta30,gamma0";

std::string render_csv(const std::vector<CoverageResult>& results) {
  std::string out;
  for (const auto& r : results) {
    out += "# plan=" + plan_json(r.plan).dump() + "\n";
    out += kCsvHeader;
    out += '\n';
    for (const auto& c : r.cells) {
      for (std::size_t l = 0; l < c.levels.size(); ++l) {
        const auto& t = c.target;
        std::ostringstream row;
        row << to_string(r.plan.method) << ',' << c.scenario << ',' << c.sizes.n1 << ','
            << c.sizes.n2 << ',' << c.sizes.n3 << ',' << format_number(c.levels[l]) << ','
            << c.replications << ',' << c.effective << ',' << c.covered[l] << ','
            << format_number(c.coverage[l]) << ',' << format_number(c.standard_error[l]) << ','
            << c.empty_interval[l] << ',' << c.failures.ordering_infeasible << ','
            << c.failures.degenerate_scale << ',' << c.failures.domain << ','
            << c.failures.boundary_estimate << ',' << c.rejected_ordering << ','
            << format_number(t.t10) << ',' << format_number(t.t20) << ','
            << format_number(t.theta10) << ',' << format_number(t.theta20) << ','
            << format_number(t.theta30) << ',' << format_number(t.gamma0) << '\n';
        out += row.str();
      }
    }
  }
  return out;
}

std::string render_text(const std::vector<CoverageResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << "method " << to_string(r.plan.method) << ", R=" << r.plan.replications;
    if (uses_bootstrap(r.plan.method)) os << ", B=" << r.plan.bootstrap_B;
    os << ", seed=" << r.plan.seed.value << '\n';
    os << std::left << std::setw(9) << "scenario" << std::setw(18) << "(n1, n2, n3)";
    for (double l : r.plan.levels) {
      os << std::setw(17) << ("level " + format_number(l));
    }
    os << "failures (ord/deg/dom/bnd)\n";
    for (const auto& c : r.cells) {
      std::ostringstream sizes;
      sizes << '(' << c.sizes.n1 << ", " << c.sizes.n2 << ", " << c.sizes.n3 << ')';
      os << std::setw(9) << c.scenario << std::setw(18) << sizes.str();
      for (std::size_t l = 0; l < c.levels.size(); ++l) {
        std::ostringstream cov;
        cov << std::fixed << std::setprecision(3) << c.coverage[l] << " (" << std::setprecision(4)
            << c.standard_error[l] << ')';
        os << std::setw(17) << cov.str();
      }
      os << c.failures.ordering_infeasible << '/' << c.failures.degenerate_scale << '/'
         << c.failures.domain << '/' << c.failures.boundary_estimate << '\n';
    }
  }
  return os.str();
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto c = line.find(',');
    out.push_back(line.substr(0, c));
    if (c == std::string_view::npos) break;
    line.remove_prefix(c + 1);
  }
  return out;
}

std::size_t parse_count(std::string_view s) {
  const double v = parse_number(s);
  if (v < 0 || v != std::floor(v)) throw Error(ErrorCategory::input, "expected a count");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string render_table(const std::vector<CoverageResult>& results, TableFormat format) {
  switch (format) {
    case TableFormat::csv: return render_csv(results);
    case TableFormat::text: return render_text(results);
    case TableFormat::json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : results) {
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& c : r.cells) cells.push_back(cell_json(c));
        arr.push_back({{"plan", plan_json(r.plan)}, {"cells", cells}});
      }
      return arr.dump(2) + "\n";
    }
  }
  return {};
}

ExperimentPlan plan_from_json(const std::string& text) {
  try {
    return plan_from(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCategory::input, std::string("malformed plan: ") + e.what());
  }
}

std::string plan_to_json(const ExperimentPlan& plan) { return plan_json(plan).dump(2); }

std::vector<CoverageResult> load_coverage_csv(const std::string& text) {
  std::vector<CoverageResult> results;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("# plan=", 0) == 0) {
      results.push_back({plan_from_json(line.substr(7)), {}});
      continue;
    }
    if (line.front() == '#') continue;
    if (line == kCsvHeader) continue;
    if (results.empty()) throw Error(ErrorCategory::input, "coverage CSV lacks a plan line");
    const auto f = split_commas(line);
    if (f.size() != 23) {
      throw Error(ErrorCategory::input, "coverage CSV row has wrong field count",
                  "line " + std::to_string(line_no));
    }
    auto& r = results.back();
    const int scenario = static_cast<int>(parse_number(f[1]));
    const SampleSizes n{parse_count(f[2]), parse_count(f[3]), parse_count(f[4])};
    if (r.cells.empty() || r.cells.back().scenario != scenario || !(r.cells.back().sizes == n)) {
      CoverageCell c;
      c.scenario = scenario;
      c.sizes = n;
      c.replications = parse_count(f[6]);
      c.effective = parse_count(f[7]);
      c.failures = {parse_count(f[12]), parse_count(f[13]), parse_count(f[14]),
                    parse_count(f[15])};
      c.rejected_ordering = parse_count(f[16]);
      c.target = {parse_number(f[17]), parse_number(f[18]), parse_number(f[19]),
                  parse_number(f[20]), parse_number(f[21]), parse_number(f[22])};
      r.cells.push_back(std::move(c));
    }
    auto& c = r.cells.back();
    c.levels.push_back(parse_number(f[5]));
    c.covered.push_back(parse_count(f[8]));
    c.coverage.push_back(parse_number(f[9]));
    c.standard_error.push_back(parse_number(f[10]));
    c.empty_interval.push_back(parse_count(f[11]));
  }
  return results;
}

}  // namespace elroc

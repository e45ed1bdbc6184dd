// Command-line front end: confidence intervals and regions for three-class
// ROC analysis, plus the coverage simulation harness.

#include <cstdint>
#include <fstream>
#include <deque>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "elroc/bootstrap.hpp"
#include "elroc/empirical.hpp"
#include "elroc/error.hpp"
#include "elroc/io.hpp"
#include "elroc/parallel.hpp"
#include "elroc/regions.hpp"
#include "elroc/scenarios.hpp"
#include "elroc/simulation.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Options {
  std::string data;
  std::string output;
  std::string format;
  double alpha = 0.05;
  std::size_t B = 200;
  std::string seed;
  std::size_t threads = 0;
  std::size_t grid_n = 0;
  std::optional<double> theta1, theta3, t1, t2;
  bool ties = false;
  bool smoothed = false;
  std::size_t mc_draws = 1000;

  // simulate
  std::string plan_path;
  std::string method = "region3d";
  std::vector<int> scenarios;
  std::vector<std::string> sizes;
  std::vector<double> levels{0.90, 0.95, 0.99};
  std::size_t replications = 1000;
  std::string scenario_file;

  // scenarios / sample
  bool check = false;
  int scenario = 1;
  std::string sample_sizes = "30,30,30";
};

[[noreturn]] void fail(elroc::ErrorCategory c, const std::string& msg,
                       const std::string& context = {}) {
  throw elroc::Error(c, msg, context);
}

template <typename T>
T require(const std::optional<T>& v, const std::string& flag) {
  if (!v) fail(elroc::ErrorCategory::validation, flag + " is required");
  return *v;
}

elroc::RngSeed resolve_seed(const std::string& text) {
  if (text.empty()) {
    fail(elroc::ErrorCategory::validation,
         "--seed is required for bootstrap subcommands (use --seed auto to draw one)");
  }
  if (text == "auto") {
    std::random_device rd;
    const std::uint64_t hi = rd();
    return {(hi << 32) | rd()};
  }
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.front() == '-') {
    fail(elroc::ErrorCategory::validation, "seed must be an unsigned 64-bit integer or 'auto'");
  }
  return {v};
}

elroc::SampleSizes parse_sizes(const std::string& text) {
  std::vector<std::size_t> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const double d = elroc::parse_number(part);
    if (!(d >= 1) || d != static_cast<double>(static_cast<std::size_t>(d))) {
      fail(elroc::ErrorCategory::validation, "sample sizes must be positive integers: " + text);
    }
    v.push_back(static_cast<std::size_t>(d));
  }
  if (v.size() != 3) fail(elroc::ErrorCategory::validation, "expected n1,n2,n3 but got " + text);
  return {v[0], v[1], v[2]};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(elroc::ErrorCategory::input, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const Options& o, const std::string& text) {
  if (o.output.empty() || o.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) fail(elroc::ErrorCategory::input, "cannot write " + o.output);
  out << text;
}

std::size_t thread_count(const Options& o) {
  return o.threads ? o.threads : elroc::default_thread_count();
}

json base_config(const std::string& sub, const Options& o) {
  json c = {{"subcommand", sub}, {"format", o.format}};
  if (!o.data.empty()) c["data"] = o.data;
  return c;
}

json dataset_json(const elroc::ThreeClassSample& x) {
  const auto s = elroc::summarize(x);
  return {{"n1", s.n1}, {"n2", s.n2}, {"n3", s.n3}, {"means_ordered", s.means_ordered}};
}

std::string config_preamble(const json& config) { return "# config=" + config.dump() + "\n"; }

std::string document(const json& config, const elroc::ThreeClassSample& x, json result) {
  json doc = {{"config", config}, {"dataset", dataset_json(x)}, {"result", std::move(result)}};
  return doc.dump(2) + "\n";
}

std::string interval_text(const json& config, const elroc::ConfidenceInterval& ci) {
  using elroc::format_number;
  std::ostringstream os;
  os << "# config=" << config.dump() << '\n';
  os << "method " << ci.method_tag << ", level " << format_number(ci.level) << '\n';
  os << "estimate " << format_number(ci.point_estimate) << '\n';
  if (ci.status == elroc::IntervalStatus::empty) {
    os << "interval empty (" << ci.diagnostic << ")\n";
  } else {
    os << "interval [" << format_number(ci.lower) << ", " << format_number(ci.upper) << "]\n";
  }
  os << "w_hat " << format_number(ci.w_hat) << " (B=" << ci.scale.B_requested
     << ", rejected unordered resamples " << ci.scale.rejected_ordering << ")\n";
  return os.str();
}

int run_region3d(const Options& o) {
  const auto x = elroc::load_dataset(o.data);
  const elroc::ThresholdPair t{require(o.t1, "--t1"), require(o.t2, "--t2")};
  const std::size_t g = o.grid_n ? o.grid_n : 99;
  const auto kind = o.smoothed ? elroc::EcdfKind::smoothed : elroc::EcdfKind::step;
  const auto r = elroc::region3d_tcf(x, t, o.alpha, g, kind);
  json c = base_config("region3d", o);
  c.update({{"t1", t.t1}, {"t2", t.t2}, {"alpha", o.alpha}, {"grid_n", g},
            {"smoothed", o.smoothed}});
  if (o.format == "json") {
    write_output(o, document(c, x, elroc::to_json(r)));
  } else {
    write_output(o, elroc::region3d_to_csv(r, config_preamble(c)));
  }
  return 0;
}

int run_ci_tcf2(const Options& o) {
  const auto x = elroc::load_dataset(o.data);
  const double th1 = require(o.theta1, "--theta1");
  const double th3 = require(o.theta3, "--theta3");
  const auto seed = resolve_seed(o.seed);
  elroc::BootstrapOptions b;
  b.B = o.B;
  b.seed = seed;
  b.threads = thread_count(o);
  const auto ci = elroc::interval_tcf2(x, th1, th3, o.alpha, b);
  json c = base_config("ci-tcf2", o);
  c.update({{"theta1", th1}, {"theta3", th3}, {"alpha", o.alpha}, {"B", o.B},
            {"seed", seed.value}});
  write_output(o, o.format == "text" ? interval_text(c, ci) : document(c, x, elroc::to_json(ci)));
  return 0;
}

int run_ci_vus(const Options& o) {
  const auto x = elroc::load_dataset(o.data);
  const auto seed = resolve_seed(o.seed);
  elroc::BootstrapOptions b;
  b.B = o.B;
  b.seed = seed;
  b.threads = thread_count(o);
  const auto ci = elroc::interval_vus(x, o.alpha, b, o.ties);
  json c = base_config("ci-vus", o);
  c.update({{"alpha", o.alpha}, {"B", o.B}, {"seed", seed.value}, {"ties", o.ties}});
  write_output(o, o.format == "text" ? interval_text(c, ci) : document(c, x, elroc::to_json(ci)));
  return 0;
}

int run_region2d(const Options& o) {
  const auto x = elroc::load_dataset(o.data);
  const double th1 = require(o.theta1, "--theta1");
  const double t2 = require(o.t2, "--t2");
  const auto seed = resolve_seed(o.seed);
  const std::size_t g = o.grid_n ? o.grid_n : 199;
  elroc::BootstrapOptions b;
  b.B = o.B;
  b.seed = seed;
  b.threads = thread_count(o);
  const auto r = elroc::region2d_pair(x, th1, t2, o.alpha, b, g, o.mc_draws);
  json c = base_config("region2d", o);
  c.update({{"theta1", th1}, {"t2", t2}, {"alpha", o.alpha}, {"B", o.B}, {"seed", seed.value},
            {"grid_n", g}, {"mc_draws", o.mc_draws}});
  if (o.format == "json") {
    write_output(o, document(c, x, elroc::to_json(r)));
  } else {
    write_output(o, elroc::region2d_to_csv(r, config_preamble(c)));
  }
  return 0;
}

int run_vus(const Options& o) {
  const auto x = elroc::load_dataset(o.data);
  const double v = o.ties ? elroc::vus_estimate_ties(x) : elroc::vus_estimate(x);
  json c = base_config("vus", o);
  c["ties"] = o.ties;
  if (o.format == "text") {
    write_output(o, "# config=" + c.dump() + "\nvus " + elroc::format_number(v) + "\n");
  } else {
    write_output(o, document(c, x, {{"vus", v}, {"ties", o.ties}}));
  }
  return 0;
}

elroc::ExperimentPlan plan_from_flags(const Options& o) {
  elroc::ExperimentPlan p;
  p.method = elroc::coverage_method_from_string(o.method);
  p.scenarios = o.scenarios;
  for (const auto& s : o.sizes) p.sizes.push_back(parse_sizes(s));
  p.levels = o.levels;
  p.replications = o.replications;
  p.bootstrap_B = o.B;
  p.theta1 = o.theta1;
  p.theta3 = o.theta3;
  p.t2 = o.t2;
  p.ties = o.ties;
  p.mc_draws = o.mc_draws;
  p.seed = resolve_seed(o.seed.empty() ? std::string("1") : o.seed);
  p.threads = o.threads;
  return p;
}

int run_simulate(const Options& o) {
  elroc::ExperimentPlan p = o.plan_path.empty() ? plan_from_flags(o)
                                                : elroc::plan_from_json(read_file(o.plan_path));
  if (!o.plan_path.empty() && !o.seed.empty()) p.seed = resolve_seed(o.seed);
  if (!o.plan_path.empty() && o.threads) p.threads = o.threads;
  if (!o.scenario_file.empty()) {
    p.custom_scenarios = elroc::scenarios_from_json(read_file(o.scenario_file));
  }
  const auto result = elroc::run_coverage(p);
  elroc::TableFormat f = elroc::TableFormat::text;
  if (o.format == "csv") f = elroc::TableFormat::csv;
  if (o.format == "json") f = elroc::TableFormat::json;
  write_output(o, elroc::render_table({result}, f));
  return 0;
}

int run_scenarios(const Options& o) {
  const auto specs = elroc::builtin_scenarios();
  if (!o.check) {
    write_output(o, elroc::scenarios_to_json(specs) + "\n");
    return 0;
  }
  std::string text;
  bool ok = true;
  for (const auto& s : specs) {
    const auto check = elroc::check_truth(s, elroc::recompute_truth(s));
    ok = ok && check.pass();
    text += (check.pass() ? "ok       " : "MISMATCH ") + check.summary() + "\n";
  }
  write_output(o, text);
  return ok ? 0 : static_cast<int>(elroc::ErrorCategory::convention_mismatch);
}

int run_sample(const Options& o) {
  const auto seed = resolve_seed(o.seed);
  const auto n = parse_sizes(o.sample_sizes);
  const auto x = elroc::sample_scenario(elroc::builtin_scenario(o.scenario), n.n1, n.n2, n.n3, seed);
  std::ostringstream head;
  head << "# scenario=" << o.scenario << " seed=" << seed.value << '\n';
  write_output(o, head.str() + elroc::dataset_to_csv(x));
  return 0;
}

void report(elroc::ErrorCategory c, const std::string& message, const std::string& context) {
  json e = {{"category", std::string(elroc::to_string(c))}, {"message", message}};
  if (!context.empty()) e["context"] = context;
  std::cerr << json{{"error", e}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Empirical-likelihood inference for three-class ROC analysis"};
  app.require_subcommand(1);
  Options o;
  std::deque<std::string> formats_by_sub;
  std::map<const CLI::App*, std::string*> format_of;

  auto common = [&](CLI::App* s, bool data, const std::string& fmt,
                    std::vector<std::string> formats) {
    if (data) s->add_option("--data", o.data, "CSV file of class,value rows")->required();
    s->add_option("--output,-o", o.output, "output path (default: stdout)");
    std::string* slot = &formats_by_sub.emplace_back(fmt);
    format_of[s] = slot;
    s->add_option("--format", *slot, "output format")
        ->check(CLI::IsMember(std::move(formats)))
        ->capture_default_str();
  };
  auto bootstrap = [&](CLI::App* s) {
    s->add_option("--B", o.B, "bootstrap resamples")->capture_default_str();
    s->add_option("--seed", o.seed, "RNG seed (unsigned integer or 'auto')");
    s->add_option("--threads", o.threads, "worker threads (default: ELROC_THREADS or cores)");
  };

  auto* r3 = app.add_subcommand("region3d", "3D confidence region for (TCF1, TCF2, TCF3)");
  common(r3, true, "csv", {"csv", "json"});
  r3->add_option("--t1", o.t1, "lower threshold");
  r3->add_option("--t2", o.t2, "upper threshold");
  r3->add_option("--alpha", o.alpha)->capture_default_str();
  r3->add_option("--grid", o.grid_n, "grid points per axis (default 99)");
  r3->add_flag("--smoothed", o.smoothed, "use piecewise-linear ECDFs");

  auto* c2 = app.add_subcommand("ci-tcf2", "interval for TCF2 with TCF1, TCF3 fixed");
  common(c2, true, "json", {"json", "text"});
  c2->add_option("--theta1", o.theta1);
  c2->add_option("--theta3", o.theta3);
  c2->add_option("--alpha", o.alpha)->capture_default_str();
  bootstrap(c2);

  auto* cv = app.add_subcommand("ci-vus", "interval for the VUS");
  common(cv, true, "json", {"json", "text"});
  cv->add_option("--alpha", o.alpha)->capture_default_str();
  cv->add_flag("--ties", o.ties, "tie-corrected VUS estimator");
  bootstrap(cv);

  auto* r2 = app.add_subcommand("region2d", "region for (TCF2, TCF3) with TCF1 and t2 fixed");
  common(r2, true, "csv", {"csv", "json"});
  r2->add_option("--theta1", o.theta1);
  r2->add_option("--t2", o.t2);
  r2->add_option("--alpha", o.alpha)->capture_default_str();
  r2->add_option("--grid", o.grid_n, "grid points per axis (default 199)");
  r2->add_option("--mc-draws", o.mc_draws)->capture_default_str();
  bootstrap(r2);

  auto* vu = app.add_subcommand("vus", "VUS point estimate");
  common(vu, true, "json", {"json", "text"});
  vu->add_flag("--ties", o.ties, "tie-corrected estimator");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo coverage experiment");
  common(sim, false, "text", {"text", "csv", "json"});
  sim->add_option("--plan", o.plan_path, "plan file (JSON); flags below are then ignored");
  sim->add_option("--method", o.method)
      ->check(CLI::IsMember({"region3d", "ci_tcf2", "ci_vus", "region2d"}))
      ->capture_default_str();
  sim->add_option("--scenario", o.scenarios, "scenario id (repeatable)");
  sim->add_option("--n", o.sizes, "sample sizes n1,n2,n3 (repeatable)");
  sim->add_option("--levels", o.levels, "nominal levels")->capture_default_str();
  sim->add_option("--R", o.replications, "replications")->capture_default_str();
  sim->add_option("--theta1", o.theta1);
  sim->add_option("--theta3", o.theta3);
  sim->add_option("--t2", o.t2);
  sim->add_flag("--ties", o.ties);
  sim->add_option("--mc-draws", o.mc_draws)->capture_default_str();
  sim->add_option("--scenario-file", o.scenario_file, "extra scenario definitions (JSON)");
  bootstrap(sim);

  auto* sc = app.add_subcommand("scenarios", "print builtin scenarios as JSON");
  common(sc, false, "json", {"json"});
  sc->add_flag("--check", o.check, "recompute truths and compare with the reference values");

  auto* sa = app.add_subcommand("sample", "draw a dataset from a builtin scenario");
  common(sa, false, "csv", {"csv"});
  sa->add_option("--scenario", o.scenario)->capture_default_str();
  sa->add_option("--n", o.sample_sizes, "n1,n2,n3")->capture_default_str();
  sa->add_option("--seed", o.seed, "RNG seed (unsigned integer or 'auto')");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report(elroc::ErrorCategory::validation, e.what(), "arguments");
    return static_cast<int>(elroc::ErrorCategory::validation);
  }

  for (const auto& [sub, slot] : format_of) {
    if (sub->parsed()) o.format = *slot;
  }

  try {
    if (r3->parsed()) return run_region3d(o);
    if (c2->parsed()) return run_ci_tcf2(o);
    if (cv->parsed()) return run_ci_vus(o);
    if (r2->parsed()) return run_region2d(o);
    if (vu->parsed()) return run_vus(o);
    if (sim->parsed()) return run_simulate(o);
    if (sc->parsed()) return run_scenarios(o);
    if (sa->parsed()) return run_sample(o);
  } catch (const elroc::Error& e) {
    report(e.category(), e.what(), e.context());
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    report(elroc::ErrorCategory::input, e.what(), {});
    return static_cast<int>(elroc::ErrorCategory::input);
  }
  return 0;
}

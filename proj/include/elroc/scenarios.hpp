#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "elroc/empirical.hpp"
#include "elroc/rng.hpp"

namespace elroc {

enum class DistFamily { normal, gamma, lognormal, weibull, beta, normal_mixture };

// One class's marker distribution. Parameter layout per family:
//   normal          (mean, sd)
//   gamma           (shape, rate)
//   lognormal       (log-mean, log-sd)
//   weibull         (shape, scale)
//   beta            (a, b)
//   normal_mixture  (weight of first component, mean1, sd1, mean2, sd2)
struct DistSpec {
  DistFamily family = DistFamily::normal;
  std::vector<double> params;

  static DistSpec normal(double mean, double sd);
  static DistSpec gamma(double shape, double rate);
  static DistSpec lognormal(double log_mean, double log_sd);
  static DistSpec weibull(double shape, double scale);
  static DistSpec beta(double a, double b);
  static DistSpec normal_mixture(double weight, double mean1, double sd1, double mean2,
                                 double sd2);

  // Throws Error(validation) on a wrong parameter count or a non-positive
  // scale/shape.
  void validate() const;
  double cdf(double x) const;
  double pdf(double x) const;
  double quantile(double p) const;
  double mean() const;
  double sample(Rng& rng) const;
  std::string describe() const;
};

std::string to_string(DistFamily family);
DistFamily dist_family_from_string(const std::string& name);

struct ScenarioTruth {
  double t10 = 0.0;
  double t20 = 0.0;
  double theta10 = 0.0;
  double theta20 = 0.0;
  double theta30 = 0.0;
  double gamma0 = 0.0;
};

// Whether the published thresholds follow from fixed TCF1/TCF3 (the usual
// case) or the TCFs follow from fixed thresholds.
enum class TruthAnchor { tcfs, thresholds };

// A known misprint in the reference table, with the value that replaces it.
struct Erratum {
  std::string field;
  double corrected = 0.0;
  std::string note;
};

struct ScenarioSpec {
  int id = 0;
  DistSpec d1, d2, d3;
  ScenarioTruth truth;  // as published
  TruthAnchor anchor = TruthAnchor::tcfs;
  std::vector<Erratum> errata;
};

// The ten reference scenarios, truth columns verbatim.
std::vector<ScenarioSpec> builtin_scenarios();
const ScenarioSpec& builtin_scenario(int id);

ThreeClassSample sample_scenario(const ScenarioSpec& spec, std::size_t n1, std::size_t n2,
                                 std::size_t n3, RngSeed seed);

enum class VusMethod { quadrature, monte_carlo };

struct TruthOptions {
  VusMethod vus_method = VusMethod::quadrature;
  std::size_t precision_n = 10'000'000;  // Monte Carlo draws per class
  RngSeed seed{20240601};
};

// Truth recomputed from the distributions by quantile inversion of the
// analytic CDFs and a one-dimensional integral (or Monte Carlo) for the VUS.
ScenarioTruth recompute_truth(const ScenarioSpec& spec, const TruthOptions& options = {});

// TCF truth at thresholds derived from fixed theta1 and theta3.
ScenarioTruth truth_at_tcfs(const ScenarioSpec& spec, double theta1, double theta3);
// TCF truth at fixed theta1 and a given second threshold.
ScenarioTruth truth_at_theta1_t2(const ScenarioSpec& spec, double theta1, double t2);

inline constexpr double kTruthTolTheta = 0.005;
inline constexpr double kTruthTolThreshold = 0.01;
inline constexpr double kTruthTolGamma = 0.005;

struct FieldCheck {
  std::string field;
  double published = 0.0;
  double recomputed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string resolution;  // set when an erratum explains a mismatch
};

struct TruthCheck {
  int scenario_id = 0;
  std::vector<FieldCheck> fields;
  bool pass() const;
  std::string summary() const;
};

TruthCheck check_truth(const ScenarioSpec& spec, const ScenarioTruth& recomputed);

// Recomputes and validates; throws Error(convention_mismatch) naming the
// scenario and the failing fields.
ScenarioTruth scenario_truth(const ScenarioSpec& spec, const TruthOptions& options = {});

// Scenario definitions as JSON text (an array of objects).
std::string scenarios_to_json(const std::vector<ScenarioSpec>& specs);
std::vector<ScenarioSpec> scenarios_from_json(const std::string& text);

}  // namespace elroc

#pragma once

#include <cstddef>
#include <limits>
#include <string_view>

#include "elroc/empirical.hpp"

namespace elroc {

// Why a pivot came out infinite, when it did.
enum class PivotDiagnostic {
  none,
  class1_bracket,        // t1 outside [min, max) of class 1
  class2_bracket,        // neither threshold inside [min, max) of class 2
  class3_bracket,        // t2 outside [min, max) of class 3
  crossed_thresholds,    // estimated t1 >= estimated t2
  infeasible_constraint, // empirical fraction at 0 or 1 but hypothesis is not
};

std::string_view to_string(PivotDiagnostic d);

// Value of an empirical log-likelihood ratio statistic: finite and >= 0, or
// +infinity.
struct PivotValue {
  double value = 0.0;
  PivotDiagnostic diagnostic = PivotDiagnostic::none;

  static PivotValue infinite(PivotDiagnostic why) {
    return {std::numeric_limits<double>::infinity(), why};
  }
  bool is_finite() const { return value < std::numeric_limits<double>::infinity(); }
};

enum class EcdfKind { step, smoothed };

// 2n [p log(p/theta) + (1-p) log((1-p)/(1-theta))] with 0 log 0 = 0.
// Infinite when theta is 0 or 1 and p differs from it. Rounding residue below
// 1e-12 in magnitude is clamped to 0.
double binomial_deviance(std::size_t n, double phat, double theta);

// Empirical-likelihood version of the deviance: the constrained maximisation
// has no feasible weights when phat is 0 or 1 and theta differs, so the ratio
// is +infinity there.
PivotValue el_binomial(std::size_t n, double phat, double theta);

// Which threshold bracket, if any, fails for ell_tcf_triple at t.
PivotDiagnostic check_tcf_domain(const ThreeClassSample& x, ThresholdPair t);

// The three-sample log-likelihood ratio for (theta1, theta2, theta3) at fixed
// thresholds t1 < t2. Throws Error(validation) if t1 >= t2.
PivotValue ell_tcf_triple(const ThreeClassSample& x, ThresholdPair t, TcfTriple theta,
                          EcdfKind kind = EcdfKind::step);

// Per-class addends of ell_tcf_triple without the domain check. The region
// fast path sums these in the same order as ell_tcf_triple.
PivotValue tcf_term1(const ThreeClassSample& x, double t1, double theta1, EcdfKind kind);
PivotValue tcf_term2(const ThreeClassSample& x, ThresholdPair t, double theta2, EcdfKind kind);
PivotValue tcf_term3(const ThreeClassSample& x, double t2, double theta3, EcdfKind kind);

// Plug-in thresholds for fixed TCF1 and TCF3. With smoothed ECDFs the
// thresholds invert the smoothed ECDFs, so the class-1 and class-3 terms
// vanish away from ties at the minimum.
struct PlugInThresholds {
  double t1_hat = 0.0;
  double t2_hat = 0.0;
};
PlugInThresholds plug_in_thresholds(const ThreeClassSample& x, double theta1, double theta3,
                                    EcdfKind kind = EcdfKind::step);

// Plug-in pivot for TCF2 with theta1 and theta3 held fixed; the thresholds
// are replaced by empirical quantiles of classes 1 and 3.
PivotValue ell_star_tcf2(const ThreeClassSample& x, double theta1, double theta2,
                         double theta3, EcdfKind kind = EcdfKind::step);

// Pivot for the VUS, n = n1 + n2 + n3. Infinite for every gamma != gamma_hat
// when gamma_hat is 0 or 1. Requires 0 < gamma < 1 and n >= 3.
PivotValue ell_vus(double gamma_hat, std::size_t n, double gamma);

// Pivot for (theta2, theta3) with theta1 fixed and t2 given; t1 is replaced by
// the class-1 empirical quantile.
PivotValue ell_star2_pair(const ThreeClassSample& x, double theta1, double theta2,
                          double theta3, double t2, EcdfKind kind = EcdfKind::step);

// Symmetric-point pivot: ell_tcf_triple at (theta, theta, theta).
PivotValue ell_plus_symmetric(const ThreeClassSample& x, double theta, ThresholdPair t);

}  // namespace elroc

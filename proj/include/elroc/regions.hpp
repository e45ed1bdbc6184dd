#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "elroc/bootstrap.hpp"
#include "elroc/empirical.hpp"
#include "elroc/pivots.hpp"

namespace elroc {

// Inverse CDF of chi^2 with `df` degrees of freedom; 0 < p < 1.
double chi2_quantile(unsigned df, double p);

enum class IntervalStatus {
  ok,
  empty,  // no parameter value passes the cutoff
  point,  // the set collapses to the point estimate
};

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0;
  std::string method_tag;
  double w_hat = 0.0;
  double point_estimate = 0.0;
  double cutoff = 0.0;  // chi^2_1 quantile the scaled pivot is compared with
  IntervalStatus status = IntervalStatus::ok;
  std::string diagnostic;
  ScaleEstimate scale;  // bootstrap provenance (default-initialised if w was given)

  bool contains(double v) const {
    return status != IntervalStatus::empty && lower <= v && v <= upper;
  }
};

// Interior lattice i / (grid_n + 1), i = 1..grid_n.
std::vector<double> interior_grid(std::size_t grid_n);

struct Region3D {
  std::vector<double> grid;  // shared by all three axes
  std::vector<std::uint8_t> membership;  // index (i1 * g + i2) * g + i3
  double threshold_used = 0.0;
  double level = 0.0;
  ThresholdPair thresholds;
  TcfTriple point_estimate;

  std::size_t grid_n() const { return grid.size(); }
  bool member(std::size_t i1, std::size_t i2, std::size_t i3) const {
    return membership[(i1 * grid.size() + i2) * grid.size() + i3] != 0;
  }
  std::size_t member_count() const;
};

struct Region2D {
  std::vector<double> grid;  // shared by the theta2 and theta3 axes
  std::vector<std::uint8_t> membership;  // index i2 * g + i3
  double c_alpha_hat = 0.0;
  double w_hat = 0.0;
  double level = 0.0;
  double theta1_fixed = 0.0;
  double t2_fixed = 0.0;
  double t1_hat = 0.0;
  double theta2_hat = 0.0;
  double theta3_hat = 0.0;
  ScaleEstimate scale;

  std::size_t grid_n() const { return grid.size(); }
  bool member(std::size_t i2, std::size_t i3) const {
    return membership[i2 * grid.size() + i3] != 0;
  }
  std::size_t member_count() const;
};

inline constexpr double kBisectionTolerance = 1e-6;

// Confidence region for the TCF triple at fixed thresholds: cells whose pivot
// is <= the chi^2_3 quantile. Throws Error(domain) naming the failed bracket.
Region3D region3d_tcf(const ThreeClassSample& x, ThresholdPair t, double alpha,
                      std::size_t grid_n = 99, EcdfKind kind = EcdfKind::step);

// Same membership computed cell by cell with ell_tcf_triple; test reference for
// the separable path.
Region3D region3d_tcf_pointwise(const ThreeClassSample& x, ThresholdPair t, double alpha,
                                std::size_t grid_n, EcdfKind kind = EcdfKind::step);

// {theta2 : w * ell_star(theta2) <= chi^2_1(1 - alpha)} for a given scale.
ConfidenceInterval interval_tcf2_with_scale(const ThreeClassSample& x, double theta1,
                                            double theta3, double alpha, double w_hat);

// As above with the scale estimated by the TCF2 bootstrap.
ConfidenceInterval interval_tcf2(const ThreeClassSample& x, double theta1, double theta3,
                                 double alpha, const BootstrapOptions& options);

// {gamma : w * ell(gamma) <= chi^2_1(1 - alpha)} for a given scale. Throws
// Error(boundary_estimate) if the VUS estimate is 0 or 1.
ConfidenceInterval interval_vus_with_scale(const ThreeClassSample& x, double alpha,
                                           double w_hat, bool ties);

ConfidenceInterval interval_vus(const ThreeClassSample& x, double alpha,
                                const BootstrapOptions& options, bool ties);

// (theta2, theta3) region at fixed theta1 and t2 for a given scale; the cutoff
// is the Monte Carlo quantile of w U1 + U2 from `mc_draws` draws.
Region2D region2d_pair_with_scale(const ThreeClassSample& x, double theta1, double t2,
                                  double alpha, double w_hat, std::size_t grid_n,
                                  RngSeed mc_seed, std::size_t mc_draws = 1000);

// Full procedure: pair bootstrap for w (stream options.seed), then the
// mixture quantile (a stream derived from the same seed).
Region2D region2d_pair(const ThreeClassSample& x, double theta1, double t2, double alpha,
                       const BootstrapOptions& options, std::size_t grid_n = 199,
                       std::size_t mc_draws = 1000);

// Seed used for the mixture quantile inside region2d_pair.
RngSeed mixture_seed(RngSeed seed);

}  // namespace elroc

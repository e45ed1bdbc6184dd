#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "elroc/empirical.hpp"
#include "elroc/rng.hpp"

namespace elroc {

// Med(chi^2_1) as used by the median-matching scale estimators.
inline constexpr double kChi2MedianApprox = (7.0 / 9.0) * (7.0 / 9.0) * (7.0 / 9.0);

// Consecutive rejected draws after which ordered resampling gives up.
inline constexpr std::size_t kMaxOrderingRejections = 1000;

struct ScaleEstimate {
  double w_hat = 0.0;
  std::size_t B_requested = 0;
  std::size_t B_accepted = 0;
  std::size_t rejected_ordering = 0;
  double median_value = 0.0;
};

// Which class means the resample must keep strictly increasing.
enum class OrderingFilter {
  all_classes,     // mean1 < mean2 < mean3; all three classes resampled
  first_two_only,  // mean1 < mean2; class 3 is carried over unchanged
};

// Draws with-replacement resamples of the filtered classes until the sample
// means are ordered. `rejected` (if given) is incremented once per discarded
// draw. Throws Error(ordering_infeasible) after kMaxOrderingRejections
// consecutive rejections.
ThreeClassSample resample_ordered(const ThreeClassSample& x, Rng& rng,
                                  std::size_t* rejected = nullptr,
                                  OrderingFilter filter = OrderingFilter::all_classes);

// Replaceable draw step, mainly so tests can inject fixed resamples.
using Resampler = std::function<ThreeClassSample(const ThreeClassSample&, Rng&,
                                                 std::size_t* rejected, OrderingFilter)>;

struct BootstrapOptions {
  std::size_t B = 200;
  RngSeed seed{};
  std::size_t threads = 1;
  Resampler resampler;  // empty: resample_ordered
};

// Median of the bootstrap pivot values; +inf sorts last, an even count
// averages the two central values.
double bootstrap_median(std::vector<double> values);

enum class ScaleRatio {
  target_over_median,  // w = (7/9)^3 / median
  median_over_target,  // w = median / (7/9)^3
};

// Turns bootstrap pivot values into a scale estimate. Throws
// Error(degenerate_scale) when the median is zero or not finite.
ScaleEstimate scale_from_bootstrap_values(std::span<const double> values, ScaleRatio ratio,
                                          std::size_t rejected_ordering = 0);

// Scale for the plug-in TCF2 pivot with theta1 and theta3 fixed. Bootstrap
// pivots are evaluated with smoothed ECDFs at the re-estimated thresholds.
ScaleEstimate estimate_w_tcf2(const ThreeClassSample& x, double theta1, double theta3,
                              const BootstrapOptions& options);

// Scale for the VUS pivot. Throws Error(boundary_estimate) if the estimate is
// 0 or 1.
ScaleEstimate estimate_w_vus(const ThreeClassSample& x, bool ties,
                             const BootstrapOptions& options);

// Scale for the (TCF2, TCF3) pivot at fixed theta1 and t2. Only classes 1 and
// 2 are resampled, and the ratio is inverted relative to the other two.
ScaleEstimate estimate_w_pair(const ThreeClassSample& x, double theta1, double t2,
                              const BootstrapOptions& options);

// Empirical (1 - alpha) quantile (linear interpolation between order
// statistics) of M draws of w U1 + U2, U1 and U2 independent chi^2_1.
double mc_quantile_mixture(double w_hat, double alpha, std::size_t M, RngSeed seed);

}  // namespace elroc

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "iristat/extreme_value.hpp"

namespace iristat::stats {

// Linear interpolation between order statistics (the common "type 7"
// convention). `sorted` must be ascending.
double quantile_sorted(std::span<const double> sorted, double prob);

// Inverse of quantile_sorted: the piecewise-linear CDF through the points
// (x_(i), (i-1)/(n-1)). 0 below the minimum, 1 above the maximum.
double ecdf_interp_sorted(std::span<const double> sorted, double x);

// Paired empirical quantiles of two samples at the given probabilities,
// which must be strictly inside (0,1) and sorted ascending.
std::vector<std::pair<double, double>> qq_map(std::span<const double> a,
                                              std::span<const double> b,
                                              std::span<const double> probabilities);

struct RemapResult {
    double threshold = 0.0;
    bool clamped = false;  // cumulative value fell outside the target support
};

// Threshold t on the target reaching the same cumulative probability that
// `threshold` reaches on the reference. Empirical form uses the
// interpolated ECDF/quantile pair, so A->B then B->A round-trips within one
// interpolation step.
RemapResult threshold_remap(std::span<const double> reference,
                            std::span<const double> target, double threshold);

// Analytic form on extreme-value models (k = 1 gives the raw binomial).
RemapResult threshold_remap(const ExtremeValueModel& reference,
                            const ExtremeValueModel& target, double threshold);

}  // namespace iristat::stats

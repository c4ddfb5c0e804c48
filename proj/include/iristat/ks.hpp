#pragma once

#include <span>

#include "iristat/binomial.hpp"

namespace iristat::stats {

struct KsResult {
    double d = 0.0;        // sup |ECDF_a - ECDF_b|
    double p_value = 1.0;  // asymptotic, effective size n_a*n_b/(n_a+n_b)
};

// Two-sample Kolmogorov-Smirnov test. Symmetric in its arguments.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// Kolmogorov survival function Q(lambda) = 2 sum_{j>=1} (-1)^(j-1)
// exp(-2 j^2 lambda^2), truncated when terms fall below 1e-16 and clamped
// to [0, 1]. Q(0) = 1 by convention.
double kolmogorov_sf(double lambda);

// Goodness of fit of lattice scores against a binomial model, compared at
// the model's own grid: scores quantize to m = round(hd*n) and the
// inclusive CDFs are compared at every grid point. A raw sup over the reals
// would pick up the lattice-vs-interpolation gap rather than model error.
KsResult ks_model_gof(std::span<const double> scores, const BinomialModel& model);

}  // namespace iristat::stats

#pragma once

#include <span>

#include "iristat/binomial.hpp"

namespace iristat::stats {

struct DofEstimate {
    BinomialModel model;  // n rounded to the nearest integer
    double dof_raw = 0.0; // unrounded p(1-p)/sigma^2
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation (n-1 denominator)
    std::size_t count = 0;
};

// Method-of-moments fit: p from the sample mean, degrees of freedom from
// N = p(1-p)/sigma^2.
DofEstimate estimate_dof(std::span<const double> scores);

}  // namespace iristat::stats

#pragma once

#include <cstdint>
#include <vector>

#include "iristat/binomial.hpp"

namespace iristat::stats {

// Best-of-k rotation search keeps only the minimum of k independent scores;
// the resulting distribution is the extreme-value transform of the base
// model. k = 1 reduces exactly to the base.
struct ExtremeValueModel {
    BinomialModel base;
    std::uint32_t k = 1;

    void validate() const {
        base.validate();
        if (k == 0) throw DomainError("ExtremeValueModel: k must be >= 1");
    }
};

// Exact order-statistic pmf of the minimum of k i.i.d. draws:
// P(min = m) = (1 - F(m-1))^k - (1 - F(m))^k, evaluated through
// log1p/expm1 so deep-tail masses keep relative accuracy.
std::vector<double> ev_pmf_grid(const ExtremeValueModel& model);
double ev_pmf(const ExtremeValueModel& model, std::uint32_t m);

// 1 - (1 - F1(x))^k with F1 the continuous-extension CDF.
double ev_cdf(const ExtremeValueModel& model, double x);

// Inclusive CDF on the grid: P(min <= m).
std::vector<double> ev_cdf_grid(const ExtremeValueModel& model);

// Continuous-form density k f1 (1 - F1)^(k-1) sampled once per grid cell,
// with f1 the piecewise density n*pmf(m) and the survival factor taken at
// the cell midpoint so the sampled curve integrates to ~1. For plotted
// curves; the exact discrete pmf above is what tests and tail sums use.
std::vector<double> ev_density_curve(const ExtremeValueModel& model);

double ev_quantile(const ExtremeValueModel& model, double prob);

// Mean of the best-of-k score distribution.
double ev_mean(const ExtremeValueModel& model);

}  // namespace iristat::stats

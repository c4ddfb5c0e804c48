#pragma once

#include <cstdint>
#include <vector>

#include "iristat/errors.hpp"

namespace iristat::stats {

// Fractional binomial model for impostor scores: hd = m/n where m counts
// disagreements over n equivalent Bernoulli trials with per-trial
// disagreement probability p.
struct BinomialModel {
    std::uint32_t n = 0;
    double p = 0.5;

    void validate() const {
        if (n == 0) throw DomainError("BinomialModel: n must be positive");
        if (!(p > 0.0 && p < 1.0))
            throw DomainError("BinomialModel: p must be in (0, 1)");
    }
};

// All combinatorial terms go through log-gamma; N = 228 factorials overflow
// anything fixed-width.
double binomial_log_pmf(const BinomialModel& model, std::uint32_t m);
double binomial_pmf(const BinomialModel& model, std::uint32_t m);

// pmf for m = 0..n.
std::vector<double> binomial_pmf_grid(const BinomialModel& model);

// Inclusive CDF at each grid point: F[m] = sum of pmf(0..m).
std::vector<double> binomial_cdf_grid(const BinomialModel& model);

// Step-form CDF: sum of pmf(m) for m <= floor(x*n).
double binomial_cdf(const BinomialModel& model, double x);

// Continuous extension: monotone piecewise-linear interpolation of the
// inclusive CDF between grid points m/n; exact at grid points. Used for
// quantile work and anywhere a real-argument CDF is needed.
double binomial_cdf_interp(const BinomialModel& model, double x);

// Inverse of the continuous extension; flat segments (pmf = 0) resolve to
// their left edge. prob outside [F(0), 1] clamps to the domain boundary.
double binomial_quantile_interp(const BinomialModel& model, double prob);

// Shared grid-arithmetic helpers (fp-robust mapping of reals onto m/n).
// Largest m with m <= x*n, snapping values a hair below a grid point up.
std::int64_t grid_floor(double x, std::uint32_t n);
// Largest m with m < x*n (strict), for left-tail "score below t" masses.
std::int64_t grid_strict_below(double x, std::uint32_t n);

}  // namespace iristat::stats

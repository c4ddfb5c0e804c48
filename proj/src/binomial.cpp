#include "iristat/binomial.hpp"

#include <algorithm>
#include <cmath>

namespace iristat::stats {

double binomial_log_pmf(const BinomialModel& model, std::uint32_t m) {
    model.validate();
    if (m > model.n)
        throw DomainError("binomial_pmf: m outside 0..n");
    const double n = model.n;
    const double dm = m;
    const double log_comb =
        std::lgamma(n + 1.0) - std::lgamma(dm + 1.0) - std::lgamma(n - dm + 1.0);
    return log_comb + dm * std::log(model.p) + (n - dm) * std::log1p(-model.p);
}

double binomial_pmf(const BinomialModel& model, std::uint32_t m) {
    return std::exp(binomial_log_pmf(model, m));
}

std::vector<double> binomial_pmf_grid(const BinomialModel& model) {
    model.validate();
    std::vector<double> pmf(model.n + 1);
    for (std::uint32_t m = 0; m <= model.n; ++m)
        pmf[m] = binomial_pmf(model, m);
    return pmf;
}

std::vector<double> binomial_cdf_grid(const BinomialModel& model) {
    std::vector<double> cdf = binomial_pmf_grid(model);
    for (std::size_t m = 1; m < cdf.size(); ++m) cdf[m] += cdf[m - 1];
    cdf.back() = std::min(cdf.back(), 1.0);
    return cdf;
}

std::int64_t grid_floor(double x, std::uint32_t n) {
    const double t = x * static_cast<double>(n);
    auto m = static_cast<std::int64_t>(std::floor(t));
    if (t - static_cast<double>(m) > 1.0 - 1e-9) ++m;
    return m;
}

std::int64_t grid_strict_below(double x, std::uint32_t n) {
    double t = x * static_cast<double>(n);
    const double r = std::round(t);
    if (std::abs(t - r) < 1e-9) t = r;  // treat near-grid thresholds as exact
    return static_cast<std::int64_t>(std::ceil(t)) - 1;
}

double binomial_cdf(const BinomialModel& model, double x) {
    model.validate();
    if (x < 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const std::int64_t m = grid_floor(x, model.n);
    if (m < 0) return 0.0;
    const auto cdf = binomial_cdf_grid(model);
    return cdf[std::min<std::int64_t>(m, model.n)];
}

double binomial_cdf_interp(const BinomialModel& model, double x) {
    model.validate();
    if (x < 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const auto cdf = binomial_cdf_grid(model);
    const double t = x * static_cast<double>(model.n);
    auto m = static_cast<std::int64_t>(std::floor(t));
    m = std::clamp<std::int64_t>(m, 0, model.n - 1);
    const double frac = t - static_cast<double>(m);
    return cdf[m] + frac * (cdf[m + 1] - cdf[m]);
}

double binomial_quantile_interp(const BinomialModel& model, double prob) {
    model.validate();
    const auto cdf = binomial_cdf_grid(model);
    if (prob <= cdf[0]) return 0.0;
    if (prob >= 1.0) return 1.0;
    // First grid point with F >= prob; interpolate inside the segment.
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), prob);
    const auto m = static_cast<std::size_t>(it - cdf.begin());
    const double lo = cdf[m - 1];
    const double hi = cdf[m];
    const double frac = hi > lo ? (prob - lo) / (hi - lo) : 0.0;
    return (static_cast<double>(m - 1) + frac) / static_cast<double>(model.n);
}

}  // namespace iristat::stats

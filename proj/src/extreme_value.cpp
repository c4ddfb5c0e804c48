#include "iristat/extreme_value.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace iristat::stats {

namespace {

// log of the survival (1 - F(m))^k in a form accurate for F near 0.
double log_survival_pow(double cdf_value, std::uint32_t k) {
    if (cdf_value >= 1.0) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(k) * std::log1p(-cdf_value);
}

}  // namespace

std::vector<double> ev_pmf_grid(const ExtremeValueModel& model) {
    model.validate();
    const auto cdf = binomial_cdf_grid(model.base);
    const std::uint32_t n = model.base.n;
    std::vector<double> pmf(n + 1);
    double log_surv_prev = 0.0;  // (1 - F(-1))^k = 1
    for (std::uint32_t m = 0; m <= n; ++m) {
        const double log_surv = log_survival_pow(cdf[m], model.k);
        const double surv = std::exp(log_surv);
        if (surv > 0.0) {
            // S(m-1) - S(m) = S(m) * expm1(log S(m-1) - log S(m))
            pmf[m] = surv * std::expm1(log_surv_prev - log_surv);
        } else {
            pmf[m] = std::exp(log_surv_prev);
        }
        log_surv_prev = log_surv;
    }
    return pmf;
}

double ev_pmf(const ExtremeValueModel& model, std::uint32_t m) {
    model.validate();
    if (m > model.base.n) throw DomainError("ev_pmf: m outside 0..n");
    return ev_pmf_grid(model)[m];
}

double ev_cdf(const ExtremeValueModel& model, double x) {
    model.validate();
    const double f1 = binomial_cdf_interp(model.base, x);
    return -std::expm1(log_survival_pow(f1, model.k));
}

std::vector<double> ev_cdf_grid(const ExtremeValueModel& model) {
    model.validate();
    auto cdf = binomial_cdf_grid(model.base);
    for (double& f : cdf) f = -std::expm1(log_survival_pow(f, model.k));
    return cdf;
}

std::vector<double> ev_density_curve(const ExtremeValueModel& model) {
    model.validate();
    const auto pmf = binomial_pmf_grid(model.base);
    const auto cdf = binomial_cdf_grid(model.base);
    const std::uint32_t n = model.base.n;
    std::vector<double> density(n + 1);
    for (std::uint32_t m = 0; m <= n; ++m) {
        const double f1 = pmf[m] * static_cast<double>(n);
        // Survival taken at the midpoint of the cell the slope belongs to;
        // the left edge would overshoot by (k-1)/2 * pmf/S per cell, which
        // is visible at k = 7 where the per-cell CDF step is a few percent
        // of the survival.
        const double f_lo = m == 0 ? 0.0 : cdf[m - 1];
        const double surv_mid = 1.0 - 0.5 * (f_lo + cdf[m]);
        density[m] = static_cast<double>(model.k) * f1 *
                     std::pow(std::max(surv_mid, 0.0),
                              static_cast<double>(model.k - 1));
    }
    return density;
}

double ev_quantile(const ExtremeValueModel& model, double prob) {
    model.validate();
    // Invert F_k(x) = 1 - (1 - F1(x))^k exactly: F1 target below, then the
    // base continuous-extension quantile.
    prob = std::clamp(prob, 0.0, 1.0);
    const double f1_target =
        -std::expm1(std::log1p(-prob) / static_cast<double>(model.k));
    return binomial_quantile_interp(model.base, f1_target);
}

double ev_mean(const ExtremeValueModel& model) {
    const auto pmf = ev_pmf_grid(model);
    double mean = 0.0;
    for (std::size_t m = 0; m < pmf.size(); ++m)
        mean += pmf[m] * (static_cast<double>(m) / static_cast<double>(model.base.n));
    return mean;
}

}  // namespace iristat::stats

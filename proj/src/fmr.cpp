#include "iristat/fmr.hpp"

#include <algorithm>
#include <cmath>

namespace iristat::stats {

double fmr_at_threshold(std::span<const double> scores, double t) {
    if (scores.empty()) throw EmptySample("fmr_at_threshold: empty sample");
    std::uint64_t below = 0;
    for (double s : scores)
        if (s < t) ++below;
    return static_cast<double>(below) / static_cast<double>(scores.size());
}

double fmr_at_threshold(const BinomialModel& model, double t) {
    model.validate();
    if (t <= 0.0) return 0.0;
    if (t > 1.0) return 1.0;
    const std::int64_t m_max = grid_strict_below(t, model.n);
    if (m_max < 0) return 0.0;
    const auto pmf = binomial_pmf_grid(model);
    double tail = 0.0;
    for (std::int64_t m = 0; m <= std::min<std::int64_t>(m_max, model.n); ++m)
        tail += pmf[static_cast<std::size_t>(m)];
    return std::min(tail, 1.0);
}

double fmr_at_threshold(const ExtremeValueModel& model, double t) {
    model.validate();
    if (t <= 0.0) return 0.0;
    if (t > 1.0) return 1.0;
    const std::int64_t m_max = grid_strict_below(t, model.base.n);
    if (m_max < 0) return 0.0;
    if (m_max >= model.base.n) return 1.0;
    // P(min <= m_max) via the survival power, accurate for tiny tails.
    const auto cdf = binomial_cdf_grid(model.base);
    const double f_inclusive = cdf[static_cast<std::size_t>(m_max)];
    return -std::expm1(static_cast<double>(model.k) * std::log1p(-f_inclusive));
}

EquityReport equity_measure(const std::map<std::string, double>& per_group_fmr) {
    if (per_group_fmr.empty())
        throw EmptySample("equity_measure: need at least one group");
    EquityReport report;
    report.per_group_fmr = per_group_fmr;
    double worst = 0.0;
    for (const auto& [group, fmr] : per_group_fmr) {
        if (!(fmr > 0.0) || !std::isfinite(fmr))
            throw NonPositiveRate("equity_measure: FMR for group '" + group +
                                  "' must be positive");
        worst = std::max(worst, fmr);
    }
    report.worst = worst;
    double log_ratio_sum = 0.0;  // sum of log(fmr/worst), each <= 0
    for (const auto& [group, fmr] : per_group_fmr)
        log_ratio_sum += std::log(fmr / worst);
    const double mean_log_ratio =
        log_ratio_sum / static_cast<double>(per_group_fmr.size());
    report.factor = std::exp(-mean_log_ratio);
    report.geometric_mean = worst * std::exp(mean_log_ratio);
    return report;
}

}  // namespace iristat::stats

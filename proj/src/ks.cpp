#include "iristat/ks.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace iristat::stats {

double kolmogorov_sf(double lambda) {
    if (lambda <= 0.0) return 1.0;
    const double e = -2.0 * lambda * lambda;
    double sum = 0.0;
    double sign = 1.0;
    for (std::uint64_t j = 1; j < 100000; ++j) {
        const double term = std::exp(e * static_cast<double>(j) * static_cast<double>(j));
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty())
        throw EmptySample("ks_two_sample: both samples must be non-empty");
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    std::size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < sa.size() && ib < sb.size()) {
        const double x = std::min(sa[ia], sb[ib]);
        while (ia < sa.size() && sa[ia] == x) ++ia;
        while (ib < sb.size() && sb[ib] == x) ++ib;
        d = std::max(d, std::abs(static_cast<double>(ia) / na -
                                 static_cast<double>(ib) / nb));
    }
    // Remaining tail of either sample only shrinks the gap back to zero.
    const double n_eff = na * nb / (na + nb);
    return {d, d == 0.0 ? 1.0 : kolmogorov_sf(std::sqrt(n_eff) * d)};
}

KsResult ks_model_gof(std::span<const double> scores, const BinomialModel& model) {
    if (scores.empty()) throw EmptySample("ks_model_gof: empty sample");
    model.validate();
    const std::uint32_t n = model.n;
    std::vector<std::uint64_t> counts(n + 1, 0);
    for (double s : scores) {
        if (!std::isfinite(s) || s < 0.0 || s > 1.0)
            throw DomainError("ks_model_gof: scores must be finite and in [0, 1]");
        auto m = static_cast<std::int64_t>(
            std::llround(s * static_cast<double>(n)));
        m = std::clamp<std::int64_t>(m, 0, n);
        ++counts[static_cast<std::size_t>(m)];
    }
    const auto cdf = binomial_cdf_grid(model);
    const double total = static_cast<double>(scores.size());
    double d = 0.0;
    double cum = 0.0;
    for (std::uint32_t m = 0; m <= n; ++m) {
        cum += static_cast<double>(counts[m]);
        d = std::max(d, std::abs(cum / total - cdf[m]));
    }
    return {d, d == 0.0 ? 1.0 : kolmogorov_sf(std::sqrt(total) * d)};
}

}  // namespace iristat::stats

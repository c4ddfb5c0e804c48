#include "iristat/quantile.hpp"

#include <algorithm>
#include <cmath>

namespace iristat::stats {

namespace {

std::vector<double> sorted_copy(std::span<const double> v, const char* who) {
    if (v.empty()) throw EmptySample(std::string(who) + ": empty sample");
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

double quantile_sorted(std::span<const double> sorted, double prob) {
    if (sorted.empty()) throw EmptySample("quantile: empty sample");
    if (!(prob >= 0.0 && prob <= 1.0))
        throw DomainError("quantile: probability outside [0, 1]");
    if (sorted.size() == 1) return sorted[0];
    const double h = prob * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double ecdf_interp_sorted(std::span<const double> sorted, double x) {
    if (sorted.empty()) throw EmptySample("ecdf: empty sample");
    if (x <= sorted.front()) return 0.0;
    if (x >= sorted.back()) return 1.0;
    // First order statistic strictly above x. A value equal to a run of
    // duplicates resolves to the rightmost element of the run: the largest
    // probability the quantile maps back onto x.
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    const auto hi = static_cast<std::size_t>(it - sorted.begin());
    const auto lo = hi - 1;
    const double denom = static_cast<double>(sorted.size() - 1);
    const double frac = (x - sorted[lo]) / (sorted[hi] - sorted[lo]);
    return (static_cast<double>(lo) + frac) / denom;
}

std::vector<std::pair<double, double>> qq_map(std::span<const double> a,
                                              std::span<const double> b,
                                              std::span<const double> probabilities) {
    const auto sa = sorted_copy(a, "qq_map");
    const auto sb = sorted_copy(b, "qq_map");
    double prev = 0.0;
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(probabilities.size());
    for (double p : probabilities) {
        if (!(p > 0.0 && p < 1.0))
            throw DomainError("qq_map: probabilities must lie strictly inside (0, 1)");
        if (p < prev) throw DomainError("qq_map: probabilities must be sorted");
        prev = p;
        pairs.emplace_back(quantile_sorted(sa, p), quantile_sorted(sb, p));
    }
    return pairs;
}

RemapResult threshold_remap(std::span<const double> reference,
                            std::span<const double> target, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw DomainError("threshold_remap: threshold must lie in (0, 1)");
    const auto sr = sorted_copy(reference, "threshold_remap");
    const auto st = sorted_copy(target, "threshold_remap");
    RemapResult out;
    if (threshold < sr.front()) {
        out.threshold = st.front();
        out.clamped = true;
        return out;
    }
    if (threshold > sr.back()) {
        out.threshold = st.back();
        out.clamped = true;
        return out;
    }
    const double cum = ecdf_interp_sorted(sr, threshold);
    out.threshold = quantile_sorted(st, cum);
    return out;
}

RemapResult threshold_remap(const ExtremeValueModel& reference,
                            const ExtremeValueModel& target, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw DomainError("threshold_remap: threshold must lie in (0, 1)");
    reference.validate();
    target.validate();
    const double cum = ev_cdf(reference, threshold);
    RemapResult out;
    out.threshold = ev_quantile(target, cum);
    // The analytic CDF spans (0,1) up to floating point, so clamping only
    // happens at the exact boundaries.
    out.clamped = cum <= 0.0 || cum >= 1.0;
    return out;
}

}  // namespace iristat::stats

#include "iristat/dof.hpp"

#include <cmath>

namespace iristat::stats {

DofEstimate estimate_dof(std::span<const double> scores) {
    if (scores.size() < 2)
        throw EmptySample("estimate_dof: need at least two scores");
    double sum = 0.0;
    for (double s : scores) {
        if (!std::isfinite(s) || s < 0.0 || s > 1.0)
            throw DomainError("estimate_dof: scores must be finite and in [0, 1]");
        sum += s;
    }
    const double mean = sum / static_cast<double>(scores.size());
    double ss = 0.0;
    for (double s : scores) {
        const double d = s - mean;
        ss += d * d;
    }
    const double variance = ss / static_cast<double>(scores.size() - 1);
    if (variance == 0.0)
        throw DegenerateSample("estimate_dof: zero sample variance");

    DofEstimate est;
    est.mean = mean;
    est.stddev = std::sqrt(variance);
    est.count = scores.size();
    est.dof_raw = mean * (1.0 - mean) / variance;
    const double rounded = std::llround(est.dof_raw);
    if (rounded < 1.0 || rounded > 1e9)
        throw DegenerateSample("estimate_dof: degrees of freedom out of range");
    est.model.n = static_cast<std::uint32_t>(rounded);
    est.model.p = mean;
    return est;
}

}  // namespace iristat::stats

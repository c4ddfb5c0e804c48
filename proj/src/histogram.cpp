#include "iristat/histogram.hpp"

#include <cmath>

namespace iristat::stats {

std::size_t Histogram::bin_index(double x) const {
    // floor(x / w) is unreliable when x sits on a bin edge that is not
    // exactly representable (e.g. x = 0.5, w = 0.005 gives floor = 99).
    // Nudge against the actual edge values instead.
    const auto nbins = counts.size();
    auto idx = static_cast<std::size_t>(x / bin_width);
    if (idx >= nbins) idx = nbins - 1;
    while (idx + 1 < nbins && x >= left_edge(idx + 1)) ++idx;
    while (idx > 0 && x < left_edge(idx)) --idx;
    return idx;
}

Histogram build_histogram(std::span<const double> scores, double bin_width) {
    if (!(bin_width > 0.0) || bin_width > 1.0)
        throw DomainError("histogram bin width must be in (0, 1]");
    Histogram h;
    h.bin_width = bin_width;
    const auto nbins = static_cast<std::size_t>(std::ceil(1.0 / bin_width - 1e-9));
    h.counts.assign(nbins, 0);
    for (double x : scores) {
        if (!std::isfinite(x) || x < 0.0 || x > 1.0)
            throw DomainError("histogram score outside [0, 1]");
        ++h.counts[h.bin_index(x)];
        ++h.total;
    }
    return h;
}

}  // namespace iristat::stats

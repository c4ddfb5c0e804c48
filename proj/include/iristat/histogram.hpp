#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "iristat/errors.hpp"

namespace iristat::stats {

// Right-open bins partitioning [0, 1]; the last bin is closed so 1.0 has a
// home. A boundary value lands in the bin whose left edge equals it.
struct Histogram {
    double bin_width = 0.005;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    std::size_t bin_count() const { return counts.size(); }
    double left_edge(std::size_t bin) const {
        return static_cast<double>(bin) * bin_width;
    }
    std::size_t bin_index(double x) const;
};

Histogram build_histogram(std::span<const double> scores, double bin_width = 0.005);

}  // namespace iristat::stats

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "iristat/iris_code.hpp"

namespace iristat::codes {

// One impostor comparison. `valid` is false when the joint mask overlap at
// the best offset stayed below the configured minimum; such records are
// kept in the output but excluded from statistics downstream. When no
// offset has any jointly valid bit, hd is NaN.
struct ScoreRecord {
    std::string id_a;
    std::string id_b;
    double hd = 0.0;
    std::uint32_t valid_bits = 0;
    std::int32_t rotation_offset = 0;
    bool valid = false;
};

struct MatchConfig {
    std::uint32_t rotations = 7;      // odd; offsets -(k-1)/2 .. +(k-1)/2
    std::uint32_t min_overlap = 512;  // jointly valid bits required to score
    unsigned threads = 0;             // 0 = hardware concurrency (hint only)

    void validate(const CodeLayout& layout) const;
};

// Masked fractional Hamming distance at zero offset.
ScoreRecord hamming_distance(const IrisCode& a, const IrisCode& b,
                             std::uint32_t min_overlap = 512);

// Minimum hd over cfg.rotations relative rotations of b against a.
// Offsets are visited in the order 0, -1, +1, -2, +2, ... so that ties
// resolve to the smallest |offset|, negative before positive.
ScoreRecord best_match(const IrisCode& a, const IrisCode& b,
                       const MatchConfig& cfg = {});

using ProgressFn = std::function<void(std::uint64_t done, std::uint64_t total)>;

// All C(n,2) unordered pairings, ordered lexicographically by (id_a, id_b)
// with id_a <= id_b within each record. Output is identical for any thread
// count: the pair index space is partitioned and every worker writes only
// its own slice.
std::vector<ScoreRecord> all_pairs(std::span<const IrisCode> codes,
                                   const MatchConfig& cfg = {},
                                   const ProgressFn& progress = nullptr);

}  // namespace iristat::codes

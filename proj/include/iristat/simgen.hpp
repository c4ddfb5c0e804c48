#pragma once

#include <cstdint>
#include <vector>

#include "iristat/iris_code.hpp"

namespace iristat::simgen {

// Recipe for a synthetic cohort whose impostor scores follow a prescribed
// binomial model. Each code carries `dof` independent feature bits, each
// replicated across one contiguous block of the layout, so the effective
// degrees of freedom are fixed by construction.
struct CohortSpec {
    std::uint32_t n_codes = 0;
    std::uint32_t dof = 0;            // target effective degrees of freedom
    double mean_hd = 0.5;             // target impostor mean, in (0, 0.5]
    codes::CodeLayout layout;
    std::uint64_t seed = 1;

    void validate() const;
};

// Deterministic for a fixed spec (bit-identical across platforms and thread
// counts); masks come back all-ones.
std::vector<codes::IrisCode> generate_cohort(const CohortSpec& spec);

// Zeroes a contiguous angular arc of the given fraction in each code's mask
// at a seeded random position (crude eyelid model). Data bits unchanged.
std::vector<codes::IrisCode> generate_masks(std::vector<codes::IrisCode> cohort,
                                            double occlusion_fraction,
                                            std::uint64_t seed);

// Block boundaries for `dof` features tiled over `total_bits` positions;
// sizes differ by at most one. Exposed for the block-replication tests.
std::vector<std::uint32_t> feature_block_sizes(std::uint32_t total_bits,
                                               std::uint32_t dof);

// Expands one feature vector into a full data bit string (block replication).
codes::BitVec expand_features(const std::vector<bool>& features,
                              const codes::CodeLayout& layout);

}  // namespace iristat::simgen

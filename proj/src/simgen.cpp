#include "iristat/simgen.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "iristat/errors.hpp"
#include "iristat/rng.hpp"

namespace iristat::simgen {

namespace {

enum Purpose : std::uint64_t { kBias = 0, kCode = 1, kMask = 2 };

std::string code_id(std::uint32_t index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "c%06u", index);
    return buf;
}

}  // namespace

void CohortSpec::validate() const {
    layout.validate();
    if (n_codes == 0) throw SpecInvalid("CohortSpec: n_codes must be positive");
    if (dof == 0 || dof > layout.total_bits())
        throw SpecInvalid("CohortSpec: dof must be in [1, total_bits]");
    if (!(mean_hd > 0.0 && mean_hd <= 0.5))
        throw SpecInvalid("CohortSpec: mean_hd must be in (0, 0.5]");
}

std::vector<std::uint32_t> feature_block_sizes(std::uint32_t total_bits,
                                               std::uint32_t dof) {
    const std::uint32_t base = total_bits / dof;
    const std::uint32_t extra = total_bits % dof;  // first `extra` blocks get +1
    std::vector<std::uint32_t> sizes(dof, base);
    for (std::uint32_t f = 0; f < extra; ++f) sizes[f] = base + 1;
    return sizes;
}

codes::BitVec expand_features(const std::vector<bool>& features,
                              const codes::CodeLayout& layout) {
    const auto sizes = feature_block_sizes(layout.total_bits(),
                                           static_cast<std::uint32_t>(features.size()));
    codes::BitVec bits(layout.total_bits());
    std::uint32_t pos = 0;
    for (std::size_t f = 0; f < features.size(); ++f) {
        if (features[f])
            for (std::uint32_t b = 0; b < sizes[f]; ++b) bits.set(pos + b, true);
        pos += sizes[f];
    }
    return bits;
}

std::vector<codes::IrisCode> generate_cohort(const CohortSpec& spec) {
    spec.validate();

    // Pairwise disagreement probability (1-q^2)/2 = mean_hd when each
    // feature copies a cohort-wide bias bit with probability (1+q)/2.
    const double q = std::sqrt(1.0 - 2.0 * spec.mean_hd);
    const double p_bias = 0.5 * (1.0 + q);

    std::vector<bool> bias(spec.dof);
    {
        SplitMix64 rng = SplitMix64::substream(spec.seed, kBias, 0);
        for (std::uint32_t f = 0; f < spec.dof; ++f) bias[f] = rng.next_bit();
    }

    std::vector<codes::IrisCode> cohort;
    cohort.reserve(spec.n_codes);
    std::vector<bool> features(spec.dof);
    for (std::uint32_t i = 0; i < spec.n_codes; ++i) {
        SplitMix64 rng = SplitMix64::substream(spec.seed, kCode, i);
        for (std::uint32_t f = 0; f < spec.dof; ++f) {
            const bool copy_bias = rng.next_double() < p_bias;
            features[f] = copy_bias ? bias[f] : !bias[f];
        }
        codes::IrisCode code(code_id(i), spec.layout);
        code.data = expand_features(features, spec.layout);
        code.mask.fill_ones();
        cohort.push_back(std::move(code));
    }
    return cohort;
}

std::vector<codes::IrisCode> generate_masks(std::vector<codes::IrisCode> cohort,
                                            double occlusion_fraction,
                                            std::uint64_t seed) {
    if (!(occlusion_fraction >= 0.0 && occlusion_fraction < 1.0))
        throw SpecInvalid("generate_masks: occlusion_fraction must be in [0, 1)");
    if (occlusion_fraction == 0.0) return cohort;
    for (std::size_t i = 0; i < cohort.size(); ++i) {
        codes::IrisCode& code = cohort[i];
        const std::uint32_t angular = code.layout.angular_resolution;
        const std::uint32_t per_step = code.layout.bits_per_step();
        const auto arc = static_cast<std::uint32_t>(
            std::llround(occlusion_fraction * angular));
        if (arc == 0) continue;
        SplitMix64 rng = SplitMix64::substream(seed, kMask, i);
        const std::uint32_t start = static_cast<std::uint32_t>(rng.next_below(angular));
        for (std::uint32_t a = 0; a < arc; ++a) {
            const std::uint32_t step = (start + a) % angular;
            for (std::uint32_t b = 0; b < per_step; ++b)
                code.mask.set(step * per_step + b, false);
        }
    }
    return cohort;
}

}  // namespace iristat::simgen

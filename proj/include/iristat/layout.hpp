#pragma once

#include <cstdint>

#include "iristat/errors.hpp"

namespace iristat::codes {

// Geometry of a template: angular x radial x phase bit grid.
// The default (128, 8, 2) gives the classical 2048-bit code; one angular
// step corresponds to 360/128 ~ 2.81 degrees of iris rotation.
struct CodeLayout {
    std::uint32_t angular_resolution = 128;
    std::uint32_t radial_resolution = 8;
    std::uint32_t phase_bits = 2;

    std::uint32_t total_bits() const {
        return angular_resolution * radial_resolution * phase_bits;
    }

    // Bits advanced by one angular rotation step (16 for the default layout).
    std::uint32_t bits_per_step() const {
        return radial_resolution * phase_bits;
    }

    void validate() const {
        if (angular_resolution < 2)
            throw DomainError("CodeLayout: angular_resolution must be >= 2");
        if (radial_resolution == 0 || phase_bits == 0)
            throw DomainError("CodeLayout: radial_resolution and phase_bits must be positive");
    }

    bool operator==(const CodeLayout&) const = default;
};

}  // namespace iristat::codes

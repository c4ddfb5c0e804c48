#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "iristat/bitvec.hpp"
#include "iristat/layout.hpp"

namespace iristat::codes {

// A binary template: data bits plus a validity mask on the same grid.
// Bits are stored angular-major: all radial x phase bits of angular
// position 0 first, then position 1, and so on.
struct IrisCode {
    std::string id;
    CodeLayout layout;
    BitVec data;
    BitVec mask;

    IrisCode() = default;
    IrisCode(std::string id_, CodeLayout layout_)
        : id(std::move(id_)),
          layout(layout_),
          data(layout_.total_bits()),
          mask(layout_.total_bits()) {}

    bool operator==(const IrisCode&) const = default;
};

// Cyclic shift along the angular dimension; steps taken modulo
// angular_resolution, negative values rotate the other way.
// rotate(rotate(c, s), -s) == c.
IrisCode rotate(const IrisCode& code, std::int32_t steps);

}  // namespace iristat::codes

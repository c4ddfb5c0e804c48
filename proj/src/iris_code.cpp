#include "iristat/iris_code.hpp"

namespace iristat::codes {

IrisCode rotate(const IrisCode& code, std::int32_t steps) {
    const std::int64_t n = code.layout.angular_resolution;
    std::int64_t s = steps % n;
    if (s < 0) s += n;
    IrisCode out;
    out.id = code.id;
    out.layout = code.layout;
    const std::uint32_t shift =
        static_cast<std::uint32_t>(s) * code.layout.bits_per_step();
    out.data = code.data.rotated(shift);
    out.mask = code.mask.rotated(shift);
    return out;
}

}  // namespace iristat::codes

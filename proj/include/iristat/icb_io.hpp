#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "iristat/iris_code.hpp"

namespace iristat::codes {

// "ICB1" template container.
//
//   magic    8 bytes  49 43 42 49 4E 00 31 00  ("ICBIN\0" '1' '\0')
//   header   4 x u32 little-endian: angular_resolution, radial_resolution,
//            phase_bits, code_count
//   per code u16 little-endian id length, id bytes (UTF-8),
//            data bits packed LSB-first and padded to a byte boundary,
//            mask bits likewise
//
// Parse failures throw FormatError carrying the byte offset.

void write_icb(std::ostream& out, std::span<const IrisCode> codes);
void write_icb_file(const std::string& path, std::span<const IrisCode> codes);

std::vector<IrisCode> read_icb(std::istream& in);
std::vector<IrisCode> read_icb_file(const std::string& path);

}  // namespace iristat::codes

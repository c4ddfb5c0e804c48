#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "iristat/match.hpp"

namespace iristat::codes {

// Score CSV: header `id_a,id_b,hd,valid_bits,rotation_offset,valid`,
// floats in shortest round-trip decimal form, `valid` as 0/1.

void write_scores_csv(std::ostream& out, std::span<const ScoreRecord> records);
void write_scores_csv_file(const std::string& path,
                           std::span<const ScoreRecord> records);

std::vector<ScoreRecord> read_scores_csv(std::istream& in);
std::vector<ScoreRecord> read_scores_csv_file(const std::string& path);

// The hd column of valid records only; accepts either a score CSV or a
// plain one-number-per-line file.
std::vector<double> read_score_values_file(const std::string& path);

}  // namespace iristat::codes

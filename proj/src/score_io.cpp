#include "iristat/score_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "iristat/errors.hpp"
#include "iristat/text.hpp"

namespace iristat::codes {

namespace {

constexpr std::string_view kHeader = "id_a,id_b,hd,valid_bits,rotation_offset,valid";

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

[[noreturn]] void bad_line(std::uint64_t line_no, const std::string& what) {
    throw IoError("score CSV line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

void write_scores_csv(std::ostream& out, std::span<const ScoreRecord> records) {
    std::string buf;
    buf.reserve(1 << 20);
    buf.append(kHeader).push_back('\n');
    for (const ScoreRecord& r : records) {
        buf.append(r.id_a).push_back(',');
        buf.append(r.id_b).push_back(',');
        buf.append(format_double(r.hd)).push_back(',');
        buf.append(std::to_string(r.valid_bits)).push_back(',');
        buf.append(std::to_string(r.rotation_offset)).push_back(',');
        buf.push_back(r.valid ? '1' : '0');
        buf.push_back('\n');
        if (buf.size() > (1 << 20)) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw IoError("score CSV: write failed");
}

void write_scores_csv_file(const std::string& path,
                           std::span<const ScoreRecord> records) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_scores_csv(out, records);
}

std::vector<ScoreRecord> read_scores_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("score CSV: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader)
        throw IoError("score CSV: unexpected header '" + line + "'");
    std::vector<ScoreRecord> records;
    std::uint64_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 6) bad_line(line_no, "expected 6 fields");
        ScoreRecord r;
        r.id_a = std::string(f[0]);
        r.id_b = std::string(f[1]);
        if (!parse_double(f[2], r.hd)) bad_line(line_no, "bad hd value");
        std::uint64_t vb = 0;
        if (!parse_u64(f[3], vb)) bad_line(line_no, "bad valid_bits value");
        r.valid_bits = static_cast<std::uint32_t>(vb);
        std::int64_t off = 0;
        if (!parse_i64(f[4], off)) bad_line(line_no, "bad rotation_offset value");
        r.rotation_offset = static_cast<std::int32_t>(off);
        if (f[5] == "1")
            r.valid = true;
        else if (f[5] == "0")
            r.valid = false;
        else
            bad_line(line_no, "bad valid flag");
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<ScoreRecord> read_scores_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return read_scores_csv(in);
}

std::vector<double> read_score_values_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::string first;
    if (!std::getline(in, first)) throw IoError("empty score file: " + path);
    if (!first.empty() && first.back() == '\r') first.pop_back();
    if (first == kHeader) {
        in.seekg(0);
        const auto records = read_scores_csv(in);
        std::vector<double> values;
        values.reserve(records.size());
        for (const ScoreRecord& r : records)
            if (r.valid) values.push_back(r.hd);
        return values;
    }
    // Plain list: one value per line.
    std::vector<double> values;
    std::uint64_t line_no = 0;
    std::string line = first;
    do {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double v = 0;
        if (!parse_double(line, v))
            throw IoError(path + " line " + std::to_string(line_no) +
                          ": not a number and not a score CSV");
        values.push_back(v);
    } while (std::getline(in, line));
    return values;
}

}  // namespace iristat::codes

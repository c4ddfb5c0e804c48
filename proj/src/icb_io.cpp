#include "iristat/icb_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "iristat/errors.hpp"

namespace iristat::codes {

namespace {

constexpr std::array<unsigned char, 8> kMagic = {'I', 'C', 'B', 'I',
                                                 'N', 0x00, 0x31, 0x00};

void put_u16(std::ostream& out, std::uint16_t v) {
    const unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                                static_cast<unsigned char>(v >> 8)};
    out.write(reinterpret_cast<const char*>(b), 2);
}

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
}

void put_bits(std::ostream& out, const BitVec& bits) {
    const std::uint32_t nbytes = (bits.size() + 7) / 8;
    std::vector<unsigned char> buf(nbytes, 0);
    const auto words = bits.words();
    for (std::uint32_t i = 0; i < nbytes; ++i)
        buf[i] = static_cast<unsigned char>(words[i / 8] >> (8 * (i % 8)));
    out.write(reinterpret_cast<const char*>(buf.data()), buf.size());
}

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    std::uint64_t offset() const { return offset_; }

    void bytes(void* dst, std::size_t n, const char* what) {
        in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in_.gcount()) != n)
            throw FormatError(std::string("ICB1: truncated ") + what, offset_);
        offset_ += n;
    }

    std::uint16_t u16(const char* what) {
        unsigned char b[2];
        bytes(b, 2, what);
        return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }

    std::uint32_t u32(const char* what) {
        unsigned char b[4];
        bytes(b, 4, what);
        return static_cast<std::uint32_t>(b[0]) | (std::uint32_t{b[1]} << 8) |
               (std::uint32_t{b[2]} << 16) | (std::uint32_t{b[3]} << 24);
    }

    BitVec bits(std::uint32_t nbits, const char* what) {
        const std::uint32_t nbytes = (nbits + 7) / 8;
        std::vector<unsigned char> buf(nbytes);
        bytes(buf.data(), nbytes, what);
        BitVec v(nbits);
        auto words = v.words();
        for (std::uint32_t i = 0; i < nbytes; ++i)
            words[i / 8] |= std::uint64_t{buf[i]} << (8 * (i % 8));
        if (nbits % 64 != 0)
            words[words.size() - 1] &= (std::uint64_t{1} << (nbits % 64)) - 1;
        return v;
    }

private:
    std::istream& in_;
    std::uint64_t offset_ = 0;
};

}  // namespace

void write_icb(std::ostream& out, std::span<const IrisCode> codes) {
    if (codes.empty()) throw DomainError("ICB1: refusing to write an empty file");
    const CodeLayout layout = codes.front().layout;
    for (const IrisCode& c : codes) {
        if (c.layout != layout)
            throw LayoutMismatch("ICB1: mixed layouts in one file (code " + c.id + ")");
        if (c.mask.popcount() == 0)
            throw DomainError("ICB1: code " + c.id + " has an empty mask");
        if (c.id.size() > 0xffff)
            throw DomainError("ICB1: id of code exceeds 65535 bytes");
    }
    out.write(reinterpret_cast<const char*>(kMagic.data()), kMagic.size());
    put_u32(out, layout.angular_resolution);
    put_u32(out, layout.radial_resolution);
    put_u32(out, layout.phase_bits);
    put_u32(out, static_cast<std::uint32_t>(codes.size()));
    for (const IrisCode& c : codes) {
        put_u16(out, static_cast<std::uint16_t>(c.id.size()));
        out.write(c.id.data(), static_cast<std::streamsize>(c.id.size()));
        put_bits(out, c.data);
        put_bits(out, c.mask);
    }
    if (!out) throw IoError("ICB1: write failed");
}

void write_icb_file(const std::string& path, std::span<const IrisCode> codes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_icb(out, codes);
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

std::vector<IrisCode> read_icb(std::istream& in) {
    Reader r(in);
    std::array<unsigned char, 8> magic{};
    r.bytes(magic.data(), magic.size(), "magic");
    if (magic != kMagic) throw FormatError("ICB1: bad magic", 0);

    CodeLayout layout;
    layout.angular_resolution = r.u32("angular_resolution");
    layout.radial_resolution = r.u32("radial_resolution");
    layout.phase_bits = r.u32("phase_bits");
    const std::uint64_t header_end = r.offset();
    try {
        layout.validate();
    } catch (const DomainError& e) {
        throw FormatError(std::string("ICB1: ") + e.what(), header_end - 12);
    }
    const std::uint32_t count = r.u32("code_count");
    if (count == 0) throw FormatError("ICB1: zero code_count", header_end);

    std::vector<IrisCode> codes;
    codes.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::uint64_t code_start = r.offset();
        IrisCode c;
        c.layout = layout;
        const std::uint16_t id_len = r.u16("id length");
        c.id.resize(id_len);
        if (id_len > 0) r.bytes(c.id.data(), id_len, "id");
        c.data = r.bits(layout.total_bits(), "data bits");
        c.mask = r.bits(layout.total_bits(), "mask bits");
        if (c.mask.popcount() == 0)
            throw FormatError("ICB1: code " + c.id + " has an empty mask", code_start);
        codes.push_back(std::move(c));
    }
    return codes;
}

std::vector<IrisCode> read_icb_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return read_icb(in);
}

}  // namespace iristat::codes

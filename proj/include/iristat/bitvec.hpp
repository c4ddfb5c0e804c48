#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace iristat::codes {

// Fixed-length bit vector packed LSB-first into 64-bit words.
// Bit i lives in word i/64 at position i%64; bits past size() in the last
// word are kept zero so whole-word popcounts need no masking.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::uint32_t bits)
        : words_((bits + 63) / 64, 0), size_(bits) {}

    std::uint32_t size() const { return size_; }
    std::size_t word_count() const { return words_.size(); }

    bool get(std::uint32_t i) const {
        check_index(i);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::uint32_t i, bool value) {
        check_index(i);
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    std::uint32_t popcount() const {
        std::uint64_t n = 0;
        for (std::uint64_t w : words_) n += std::popcount(w);
        return static_cast<std::uint32_t>(n);
    }

    void fill_ones() {
        for (auto& w : words_) w = ~std::uint64_t{0};
        clear_tail();
    }

    // Circular shift toward higher bit indices: result bit (i+shift) mod size
    // equals bit i. Rotations are precomputed once per code, so this is the
    // plain bit loop; the hot path is the word-level XOR/AND/popcount kernel.
    BitVec rotated(std::uint32_t shift) const {
        BitVec out(size_);
        if (size_ == 0) return out;
        shift %= size_;
        for (std::uint32_t i = 0; i < size_; ++i) {
            if ((words_[i >> 6] >> (i & 63)) & 1u) {
                std::uint32_t j = i + shift;
                if (j >= size_) j -= size_;
                out.words_[j >> 6] |= std::uint64_t{1} << (j & 63);
            }
        }
        return out;
    }

    bool operator==(const BitVec&) const = default;

private:
    void check_index(std::uint32_t i) const {
        if (i >= size_) throw std::out_of_range("BitVec: bit index out of range");
    }
    void clear_tail() {
        if (size_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }

    std::vector<std::uint64_t> words_;
    std::uint32_t size_ = 0;
};

// popcount(a & b) over two equally sized word spans.
inline std::uint32_t and_popcount(std::span<const std::uint64_t> a,
                                  std::span<const std::uint64_t> b) {
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += std::popcount(a[i] & b[i]);
    return static_cast<std::uint32_t>(n);
}

}  // namespace iristat::codes

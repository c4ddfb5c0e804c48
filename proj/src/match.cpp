#include "iristat/match.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace iristat::codes {

namespace {

struct PairScore {
    double hd;
    std::uint32_t valid_bits;
};

// XOR/AND/popcount kernel over the packed words of two codes.
PairScore masked_hamming(std::span<const std::uint64_t> da,
                         std::span<const std::uint64_t> ma,
                         std::span<const std::uint64_t> db,
                         std::span<const std::uint64_t> mb) {
    std::uint64_t joint = 0;
    std::uint64_t differ = 0;
    for (std::size_t w = 0; w < da.size(); ++w) {
        const std::uint64_t m = ma[w] & mb[w];
        joint += std::popcount(m);
        differ += std::popcount((da[w] ^ db[w]) & m);
    }
    const auto valid = static_cast<std::uint32_t>(joint);
    if (valid == 0)
        return {std::numeric_limits<double>::quiet_NaN(), 0};
    return {static_cast<double>(differ) / static_cast<double>(valid), valid};
}

// Offsets in tie-break preference order: 0, -1, +1, -2, +2, ...
std::vector<std::int32_t> offset_order(std::uint32_t rotations) {
    std::vector<std::int32_t> order;
    order.reserve(rotations);
    order.push_back(0);
    for (std::int32_t d = 1; order.size() < rotations; ++d) {
        order.push_back(-d);
        if (order.size() < rotations) order.push_back(d);
    }
    return order;
}

// Chooses the best offset among precomputed rotations of b.
// rotated_b[r] corresponds to offset order[r].
ScoreRecord pick_best(const IrisCode& a,
                      std::span<const IrisCode> rotated_b,
                      std::span<const std::int32_t> order,
                      std::uint32_t min_overlap) {
    ScoreRecord rec;
    rec.id_a = a.id;
    rec.hd = std::numeric_limits<double>::quiet_NaN();
    double fallback_hd = std::numeric_limits<double>::quiet_NaN();
    std::uint32_t fallback_bits = 0;
    std::int32_t fallback_offset = 0;
    bool have_valid = false;
    bool have_fallback = false;
    for (std::size_t r = 0; r < rotated_b.size(); ++r) {
        const PairScore s = masked_hamming(a.data.words(), a.mask.words(),
                                           rotated_b[r].data.words(),
                                           rotated_b[r].mask.words());
        if (s.valid_bits >= min_overlap) {
            if (!have_valid || s.hd < rec.hd) {
                rec.hd = s.hd;
                rec.valid_bits = s.valid_bits;
                rec.rotation_offset = order[r];
                have_valid = true;
            }
        } else if (!have_valid && s.valid_bits > 0 &&
                   (!have_fallback || s.hd < fallback_hd)) {
            fallback_hd = s.hd;
            fallback_bits = s.valid_bits;
            fallback_offset = order[r];
            have_fallback = true;
        }
    }
    rec.valid = have_valid;
    if (!have_valid && have_fallback) {
        rec.hd = fallback_hd;
        rec.valid_bits = fallback_bits;
        rec.rotation_offset = fallback_offset;
    }
    rec.id_b = rotated_b.empty() ? std::string{} : rotated_b.front().id;
    return rec;
}

std::vector<IrisCode> rotations_of(const IrisCode& code,
                                   std::span<const std::int32_t> order) {
    std::vector<IrisCode> out;
    out.reserve(order.size());
    for (std::int32_t o : order) out.push_back(rotate(code, o));
    return out;
}

}  // namespace

void MatchConfig::validate(const CodeLayout& layout) const {
    if (rotations == 0 || rotations % 2 == 0)
        throw DomainError("MatchConfig: rotation count must be odd and positive");
    if (rotations > layout.angular_resolution - 1)
        throw DomainError("MatchConfig: rotation count exceeds angular resolution");
}

ScoreRecord hamming_distance(const IrisCode& a, const IrisCode& b,
                             std::uint32_t min_overlap) {
    if (a.layout != b.layout)
        throw LayoutMismatch("hamming_distance: code layouts differ (" + a.id +
                             " vs " + b.id + ")");
    const PairScore s = masked_hamming(a.data.words(), a.mask.words(),
                                       b.data.words(), b.mask.words());
    ScoreRecord rec;
    rec.id_a = a.id;
    rec.id_b = b.id;
    rec.hd = s.hd;
    rec.valid_bits = s.valid_bits;
    rec.rotation_offset = 0;
    rec.valid = s.valid_bits >= min_overlap;
    return rec;
}

ScoreRecord best_match(const IrisCode& a, const IrisCode& b,
                       const MatchConfig& cfg) {
    if (a.layout != b.layout)
        throw LayoutMismatch("best_match: code layouts differ (" + a.id +
                             " vs " + b.id + ")");
    cfg.validate(a.layout);
    const auto order = offset_order(cfg.rotations);
    const auto rotated = rotations_of(b, order);
    return pick_best(a, rotated, order, cfg.min_overlap);
}

std::vector<ScoreRecord> all_pairs(std::span<const IrisCode> codes,
                                   const MatchConfig& cfg,
                                   const ProgressFn& progress) {
    const std::size_t n = codes.size();
    if (n < 2) throw DomainError("all_pairs: need at least two codes");
    const CodeLayout layout = codes.front().layout;
    for (const IrisCode& c : codes)
        if (c.layout != layout)
            throw LayoutMismatch("all_pairs: code " + c.id +
                                 " has a different layout");
    cfg.validate(layout);

    // Enumerate rows in id order so records come out sorted by (id_a, id_b).
    std::vector<std::size_t> by_id(n);
    std::iota(by_id.begin(), by_id.end(), std::size_t{0});
    std::sort(by_id.begin(), by_id.end(), [&](std::size_t x, std::size_t y) {
        if (codes[x].id != codes[y].id) return codes[x].id < codes[y].id;
        return x < y;
    });

    const auto order = offset_order(cfg.rotations);
    std::vector<std::vector<IrisCode>> rotated(n);
    for (std::size_t i = 0; i < n; ++i)
        rotated[i] = rotations_of(codes[by_id[i]], order);

    // row_offset[i] = index of the first pair of row i in the flat output.
    std::vector<std::uint64_t> row_offset(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        row_offset[i + 1] = row_offset[i] + (n - 1 - i);
    const std::uint64_t total = row_offset[n];

    std::vector<ScoreRecord> records(total);

    unsigned workers = cfg.threads != 0 ? cfg.threads
                                        : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, std::max<std::uint64_t>(total, 1)));

    std::atomic<std::uint64_t> done{0};

    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        // Locate the row containing pair index `begin`.
        std::size_t i = static_cast<std::size_t>(
            std::upper_bound(row_offset.begin(), row_offset.end(), begin) -
            row_offset.begin() - 1);
        std::size_t j = i + 1 + static_cast<std::size_t>(begin - row_offset[i]);
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            const IrisCode& a = codes[by_id[i]];
            ScoreRecord rec = pick_best(a, rotated[j], order, cfg.min_overlap);
            rec.id_b = codes[by_id[j]].id;
            records[idx] = std::move(rec);
            if (++j == n) {
                ++i;
                j = i + 1;
            }
            const std::uint64_t d = done.fetch_add(1, std::memory_order_relaxed) + 1;
            if (progress && (d % 65536 == 0 || d == total)) progress(d, total);
        }
    };

    if (workers == 1) {
        run_range(0, total);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            const std::uint64_t begin = total * t / workers;
            const std::uint64_t end = total * (t + 1) / workers;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return records;
}

}  // namespace iristat::codes

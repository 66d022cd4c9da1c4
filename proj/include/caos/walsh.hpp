#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace caos {

/// Builds the order x order Sylvester-Hadamard matrix by recursive doubling.
/// Row 0 is all +1; every other row is zero-mean. Throws config_error unless
/// order is a power of two and >= 1.
std::vector<std::vector<int8_t>> build_hadamard(uint32_t order);

/// Deterministic pixel-to-code assignment: pixels in row-major scan order get
/// code indices 1..pixel_count. Index 0 (the all-ones row) is never assigned
/// so every assigned code is zero-mean and the correlation decode rejects DC.
/// Throws config_error when pixel_count > codebook_order - 1.
std::vector<uint32_t> assign_codes(uint32_t pixel_count, uint32_t codebook_order);

/// Walsh code matrix plus the per-pixel code assignment. The matrix is never
/// materialized: entry (i,k) of the Sylvester construction is
/// (-1)^popcount(i AND k), evaluated on demand.
class WalshCodebook {
public:
    WalshCodebook(uint32_t order, uint32_t pixel_count);
    WalshCodebook(uint32_t order, std::vector<uint32_t> assignment);

    uint32_t order() const { return order_; }
    uint32_t pixel_count() const { return static_cast<uint32_t>(assignment_.size()); }
    const std::vector<uint32_t>& assignment() const { return assignment_; }

    /// Code matrix entry in {+1, -1}.
    static int code(uint32_t row, uint32_t col) {
        return (std::popcount(row & col) & 1) ? -1 : +1;
    }

    std::vector<int8_t> row(uint32_t index) const;

    /// Row packed into 64-bit words, one bit per entry (1 bit = -1 entry).
    /// Dot products between bipolar rows reduce to popcounts of XORed words.
    std::vector<uint64_t> packed_row(uint32_t index) const;

private:
    uint32_t order_ = 0;
    std::vector<uint32_t> assignment_;
};

// CAOSWH01 container: magic, order u32 LE, pixel count u32 LE, then the
// assignment indices as u32 LE. The matrix is regenerated, never stored.
void save_codebook(const WalshCodebook& book, const std::string& path);
WalshCodebook load_codebook(const std::string& path);

} // namespace caos

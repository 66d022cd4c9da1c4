#include "caos/walsh.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>

#include "caos/errors.hpp"

namespace caos {

namespace {

bool is_pow2(uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

void check_order(uint32_t order) {
    if (!is_pow2(order))
        throw config_error("codebook order must be a power of 2, got " + std::to_string(order));
}

} // namespace

std::vector<std::vector<int8_t>> build_hadamard(uint32_t order) {
    check_order(order);
    std::vector<std::vector<int8_t>> h(order, std::vector<int8_t>(order));
    h[0][0] = 1;
    // Sylvester doubling: H_2n = [[H, H], [H, -H]].
    for (uint32_t n = 1; n < order; n *= 2) {
        for (uint32_t i = 0; i < n; ++i) {
            for (uint32_t j = 0; j < n; ++j) {
                int8_t v = h[i][j];
                h[i][j + n] = v;
                h[i + n][j] = v;
                h[i + n][j + n] = static_cast<int8_t>(-v);
            }
        }
    }
    return h;
}

std::vector<uint32_t> assign_codes(uint32_t pixel_count, uint32_t codebook_order) {
    check_order(codebook_order);
    if (pixel_count < 1)
        throw config_error("pixel count must be >= 1");
    if (pixel_count > codebook_order - 1)
        throw config_error("codebook capacity exceeded: " + std::to_string(pixel_count) +
                           " pixels requested but a " + std::to_string(codebook_order) +
                           "-bit book has only " + std::to_string(codebook_order - 1) +
                           " zero-mean codes");
    std::vector<uint32_t> assignment(pixel_count);
    std::iota(assignment.begin(), assignment.end(), 1u);
    return assignment;
}

WalshCodebook::WalshCodebook(uint32_t order, uint32_t pixel_count)
    : WalshCodebook(order, assign_codes(pixel_count, order)) {}

WalshCodebook::WalshCodebook(uint32_t order, std::vector<uint32_t> assignment)
    : order_(order), assignment_(std::move(assignment)) {
    check_order(order_);
    if (assignment_.empty() || assignment_.size() > order_ - 1)
        throw config_error("assignment size " + std::to_string(assignment_.size()) +
                           " out of range for order " + std::to_string(order_));
    std::vector<uint8_t> seen(order_, 0);
    for (uint32_t idx : assignment_) {
        if (idx < 1 || idx >= order_)
            throw config_error("assigned code index " + std::to_string(idx) +
                               " outside [1, " + std::to_string(order_ - 1) + "]");
        if (seen[idx]++)
            throw config_error("duplicate code index " + std::to_string(idx));
    }
}

std::vector<int8_t> WalshCodebook::row(uint32_t index) const {
    if (index >= order_)
        throw config_error("row index " + std::to_string(index) + " out of range");
    std::vector<int8_t> r(order_);
    for (uint32_t k = 0; k < order_; ++k)
        r[k] = static_cast<int8_t>(code(index, k));
    return r;
}

std::vector<uint64_t> WalshCodebook::packed_row(uint32_t index) const {
    if (index >= order_)
        throw config_error("row index " + std::to_string(index) + " out of range");
    std::vector<uint64_t> packed((order_ + 63) / 64, 0);
    for (uint32_t k = 0; k < order_; ++k)
        if (code(index, k) < 0)
            packed[k / 64] |= uint64_t(1) << (k % 64);
    return packed;
}

namespace {

constexpr char kMagic[8] = {'C', 'A', 'O', 'S', 'W', 'H', '0', '1'};

void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

uint32_t get_u32(const std::string& in, size_t off) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(uint8_t(in[off + i])) << (8 * i);
    return v;
}

} // namespace

void save_codebook(const WalshCodebook& book, const std::string& path) {
    std::string out;
    out.append(kMagic, sizeof kMagic);
    put_u32(out, book.order());
    put_u32(out, book.pixel_count());
    for (uint32_t idx : book.assignment()) put_u32(out, idx);

    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open " + path + " for writing");
    f.write(out.data(), std::streamsize(out.size()));
    if (!f) throw io_error("write failed: " + path);
}

WalshCodebook load_codebook(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open " + path);
    std::string in((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

    if (in.size() < 16)
        throw format_error(path + ": truncated header at offset " + std::to_string(in.size()));
    if (std::memcmp(in.data(), kMagic, sizeof kMagic) != 0)
        throw format_error(path + ": bad magic at offset 0");
    uint32_t order = get_u32(in, 8);
    uint32_t count = get_u32(in, 12);
    size_t expected = 16 + size_t(count) * 4;
    if (in.size() != expected)
        throw format_error(path + ": expected " + std::to_string(expected) + " bytes, found " +
                           std::to_string(in.size()) + " (offset 16)");
    std::vector<uint32_t> assignment(count);
    for (uint32_t i = 0; i < count; ++i) assignment[i] = get_u32(in, 16 + size_t(i) * 4);
    return WalshCodebook(order, std::move(assignment));
}

} // namespace caos

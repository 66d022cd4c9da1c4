#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace caos {

/// Iterative radix-2 decimation-in-time FFT plan for a fixed power-of-two
/// length. Twiddles and the bit-reversal permutation are precomputed once;
/// forward() is const and safe to call concurrently on distinct buffers.
class FftPlan {
public:
    explicit FftPlan(uint32_t n);

    uint32_t size() const { return n_; }

    /// In-place forward transform of n complex samples.
    void forward(std::complex<double>* data) const;

private:
    uint32_t n_ = 0;
    std::vector<uint32_t> reversed_;
    std::vector<std::complex<double>> twiddles_;   // n/2 roots of unity
};

} // namespace caos

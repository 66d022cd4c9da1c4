#include "caos/fft.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "caos/errors.hpp"

namespace caos {

FftPlan::FftPlan(uint32_t n) : n_(n) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw config_error("FFT length must be a power of 2, got " + std::to_string(n));
    reversed_.resize(n);
    uint32_t log2n = 0;
    while ((uint32_t(1) << log2n) < n) ++log2n;
    for (uint32_t i = 0; i < n; ++i) {
        uint32_t r = 0;
        for (uint32_t b = 0; b < log2n; ++b)
            if (i & (uint32_t(1) << b)) r |= uint32_t(1) << (log2n - 1 - b);
        reversed_[i] = r;
    }
    twiddles_.resize(n / 2);
    for (uint32_t k = 0; k < n / 2; ++k) {
        double angle = -2.0 * std::numbers::pi * double(k) / double(n);
        twiddles_[k] = {std::cos(angle), std::sin(angle)};
    }
}

void FftPlan::forward(std::complex<double>* data) const {
    for (uint32_t i = 0; i < n_; ++i) {
        uint32_t j = reversed_[i];
        if (i < j) std::swap(data[i], data[j]);
    }
    for (uint32_t len = 2; len <= n_; len <<= 1) {
        uint32_t stride = n_ / len;   // twiddle table step
        for (uint32_t start = 0; start < n_; start += len) {
            for (uint32_t k = 0; k < len / 2; ++k) {
                std::complex<double> w = twiddles_[k * stride];
                std::complex<double>& a = data[start + k];
                std::complex<double>& b = data[start + k + len / 2];
                std::complex<double> t = w * b;
                b = a - t;
                a += t;
            }
        }
    }
}

} // namespace caos

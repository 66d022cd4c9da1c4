#pragma once

#include <cstdint>

namespace caos {

/// Signal-chain parameters. The carrier makes cycles_per_bit full on/off
/// cycles inside every code bit (carrier_hz = cycles_per_bit * bit_rate_hz),
/// and each bit window is exactly one samples_per_bit-point FFT frame, so the
/// carrier sits on an integer FFT bin and the amplitude estimate is
/// leakage-free.
struct SimConfig {
    double bit_rate_hz = 1000.0;
    uint32_t cycles_per_bit = 32;
    uint32_t samples_per_bit = 1024;   // power of two, > 2 * cycles_per_bit
    uint32_t adc_bits = 16;            // 8..24
    double adc_full_scale = 1.0;
    double detector_gain = 1.0;
    double noise_rms = 0.0;            // additive Gaussian, detector-output scale
    bool dual_pd = false;
    uint64_t seed = 0;

    double carrier_hz() const { return bit_rate_hz * cycles_per_bit; }
    double sample_rate_hz() const { return bit_rate_hz * samples_per_bit; }

    int32_t adc_code_max() const { return (int32_t(1) << (adc_bits - 1)) - 1; }
    int32_t adc_code_min() const { return -(int32_t(1) << (adc_bits - 1)); }
    /// One quantization step in detector-output units.
    double adc_step() const { return adc_full_scale / adc_code_max(); }

    /// Throws config_error on any violated invariant.
    void validate() const;
};

} // namespace caos

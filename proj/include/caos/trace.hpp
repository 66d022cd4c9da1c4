#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "caos/sim_config.hpp"

namespace caos {

/// One or two channels of ADC samples, framed as bits x samples_per_bit.
struct SampleTrace {
    std::vector<std::vector<int32_t>> channels;
    uint32_t bits = 0;
    uint32_t samples_per_bit = 0;
    uint64_t saturation_count = 0;   // samples clamped at the ADC rails
    SimConfig config;                // snapshot used by encode
};

// CAOSTR01 trace container. Header: magic "CAOSTR01", version u16 LE,
// channels u8, adc_bits u8, bits u32 LE, samples_per_bit u32 LE,
// bit_rate_hz f64 LE, cycles_per_bit u32 LE, seed u64 LE,
// saturation_count u64 LE. Channel data follows channel-major as signed
// LE samples: 16-bit when adc_bits <= 16, else 32-bit.
void save_trace(const SampleTrace& trace, const std::string& path);

/// Restores the trace plus the header's config fields; fields the file does
/// not carry (gain, full scale, noise) keep their defaults and are supplied
/// by the caller's run configuration.
SampleTrace load_trace(const std::string& path);

} // namespace caos

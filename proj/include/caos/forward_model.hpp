#pragma once

#include <cstdint>
#include <vector>

#include "caos/scene.hpp"
#include "caos/sim_config.hpp"
#include "caos/trace.hpp"
#include "caos/walsh.hpp"

namespace caos {

/// Kernel execution mode. Parallel kernels are schedule-independent: the
/// serial reference and the OpenMP version produce bit-identical output.
enum class Exec { serial, parallel };

/// On/off keyed carrier level for a (bit-local) sample index: 1 during the
/// first half of each carrier cycle, 0 during the second. Exactly
/// cycles_per_bit full cycles per bit window.
int carrier_level(uint32_t sample_index, const SimConfig& config);

/// round(value / full_scale * (2^(bits-1)-1)), ties away from zero, clamped
/// to the signed code range.
int32_t quantize_sample(double value, const SimConfig& config);

/// Pre-quantization detector output: per bit k the DMD routes pixel j to
/// channel 0 when its code bit is +1 (mirror state b = (1+c)/2), to channel 1
/// otherwise, and the summed light is keyed by the carrier. Seeded Gaussian
/// noise is added per sample; each (channel, bit) has its own noise stream so
/// the result does not depend on the parallel schedule. Returns one channel,
/// or two when config.dual_pd is set.
std::vector<std::vector<double>> encode_analog(const SceneImage& scene,
                                               const WalshCodebook& book,
                                               const SimConfig& config,
                                               Exec exec = Exec::parallel);

/// encode_analog followed by quantization. Clamped samples are counted in
/// trace.saturation_count.
SampleTrace encode(const SceneImage& scene, const WalshCodebook& book,
                   const SimConfig& config, Exec exec = Exec::parallel);

} // namespace caos

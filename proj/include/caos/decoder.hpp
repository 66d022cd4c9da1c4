#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "caos/forward_model.hpp"
#include "caos/grid.hpp"
#include "caos/sim_config.hpp"
#include "caos/trace.hpp"
#include "caos/walsh.hpp"

namespace caos {

/// Per-bit carrier amplitudes: one N-point FFT per bit window, magnitude of
/// the carrier bin scaled by 2/N. Amplitudes from extraction are
/// nonnegative; a differential combine may produce signed values.
struct BitAmplitudes {
    std::vector<double> amps;
    uint32_t fft_length = 0;
    uint32_t carrier_bin = 0;
};

/// Linear scale mapping the correlation output back to 0..1 scaled
/// irradiance: the end-to-end carrier-fundamental amplitude seen per unit
/// summed irradiance.
struct CalibrationScale {
    double alpha = 1.0;
};

struct DecodedImage {
    int rows = 0;
    int cols = 0;
    Grid<double> values;             // scaled irradiance; may dip negative under noise
    CalibrationScale calibration;
    SimConfig config;
};

BitAmplitudes extract_bit_amplitudes(std::span<const double> samples, const SimConfig& config,
                                     Exec exec = Exec::parallel);

/// Dequantizes one trace channel (code * adc_step) and extracts amplitudes.
BitAmplitudes extract_bit_amplitudes(const SampleTrace& trace, int channel,
                                     Exec exec = Exec::parallel);

/// Per-bit difference ch1 - ch2. Channel 2 carries the complement masks, so
/// correlation of the difference doubles the per-pixel signal; decode divides
/// by the extra factor of 2.
BitAmplitudes differential_combine(const BitAmplitudes& ch1, const BitAmplitudes& ch2);

/// Correlates the amplitude sequence against every assigned Walsh code and
/// normalizes by 2/(K * alpha): with zero-mean orthogonal codes the raw
/// correlation is (K/2) * alpha * irradiance.
DecodedImage correlate_decode(const BitAmplitudes& amps, const WalshCodebook& book,
                              const CalibrationScale& calibration, int rows, int cols,
                              Exec exec = Exec::parallel);

/// Amplitude of the sampled carrier's fundamental, (2/N)|DFT_P(carrier)|,
/// evaluated exactly from the carrier definition. Approaches 2/pi as the
/// samples-per-cycle count grows.
double carrier_fundamental(const SimConfig& config);

/// Analytic calibration: alpha = detector_gain * carrier_fundamental.
CalibrationScale calibrate(const SimConfig& config, const WalshCodebook& book);

/// Empirical calibration: encodes and decodes one reference pixel of
/// irradiance 1 and sets alpha so it decodes to 1.0.
CalibrationScale calibrate_empirical(const SimConfig& config, const WalshCodebook& book);

struct DecodeOptions {
    int channel = 0;
    bool differential = false;
    Exec exec = Exec::parallel;
};

/// Full decode of a trace: extraction, optional differential combine,
/// correlation, normalization.
DecodedImage decode_trace(const SampleTrace& trace, const WalshCodebook& book,
                          const CalibrationScale& calibration, int rows, int cols,
                          const DecodeOptions& options = {});

} // namespace caos

#pragma once

#include <cstdint>
#include <vector>

#include "caos/grid.hpp"

namespace caos {

/// 10 log10(p_ref / p). Throws config_error on non-positive input.
double dr_db(double p_ref, double p);

struct PatchStats {
    int patch_id = 0;
    double dr_db = 0.0;        // ground truth attenuation vs patch 1
    double measured_db = 0.0;  // decoded, relative to patch 1; NaN if signal <= 0
    double snr = 0.0;          // patch mean / dark RMS, clamped at 0
    bool recovered = false;    // snr > 1
};

struct PatchReport {
    std::vector<PatchStats> patches;
    double dark_rms = 0.0;
};

/// Per-patch signal = mean over interior pixels (one-pixel erosion, 8-connected);
/// noise = RMS of decoded values over the dark mask. Requires >= 30 dark
/// pixels and >= 4 interior pixels per patch.
PatchReport patch_snr(const Grid<double>& decoded, const Grid<int32_t>& patch_map,
                      const Grid<uint8_t>& dark_mask,
                      const std::vector<double>& truth_attenuations_db);

/// 3x3 median filter restricted to `region` (windows are intersected with the
/// region so border pixels are not dragged toward the dark surround).
Grid<double> median3x3(const Grid<double>& image, const Grid<uint8_t>& region);

double mean_over(const Grid<double>& image, const Grid<uint8_t>& region);

/// 100 * (1 - (vmax - vmin)/(vmax + vmin)) over the region after 3x3 median
/// smoothing, clamped to [0, 100].
double uniformity_pct(const Grid<double>& image, const Grid<uint8_t>& region);

struct LinearityFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points = 0;
};

/// Ordinary least squares of measured dB against ground-truth dB over the
/// recovered patches (the reference patch contributes its (0, 0) point).
LinearityFit linearity_fit(const PatchReport& report);

} // namespace caos

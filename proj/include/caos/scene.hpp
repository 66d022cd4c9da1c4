#pragma once

#include <cstdint>
#include <vector>

#include "caos/grid.hpp"

namespace caos {

/// Ground-truth scene on the camera pixel grid. Irradiance is dimensionless
/// scaled optical power with the reference patch at 1.0. Pixels with
/// illuminated == 0 are dark (exactly zero irradiance) and serve as the
/// noise reference for the decoded image.
struct SceneImage {
    int rows = 0;
    int cols = 0;
    Grid<double> irradiance;
    Grid<uint8_t> illuminated;   // 1 = lit
    Grid<int32_t> patch_map;     // empty when the scene has no patches; 0 = no patch
};

struct TargetSpec {
    int patch_count = 36;
    double total_dr_db = 160.0;
    int patch_size_px = 8;
    int gap_px = 1;
    int border_px = 2;
    // Per-patch attenuations in dB. When empty, patch i gets
    // (i-1) * total_dr_db / (patch_count-1). When set, must have exactly
    // patch_count entries.
    std::vector<double> dr_table_override;

    /// The vendor-calibrated attenuation values for the 36-patch target:
    /// the published first 14 patches, later patches continuing the 4.6 dB step.
    static std::vector<double> calibrated_attenuations_db();
};

struct Rect {
    int row0 = 0;
    int col0 = 0;
    int rows = 0;
    int cols = 0;
};

/// Resolved per-patch attenuation table for a spec (override or formula).
std::vector<double> patch_attenuations_db(const TargetSpec& spec);

/// Numbered patches in raster order on a ceil(sqrt(n)) grid, dark everywhere
/// else. Patch i has irradiance 10^(-a_i/10) with a_1 = 0.
SceneImage generate_patch_target(const TargetSpec& spec, int rows, int cols);

/// Smooth seeded illumination profile inside `region`, dark outside. The
/// profile is rescaled until the min-max uniformity metric (after 3x3 median
/// smoothing) matches uniformity_pct within +/-0.05 and the mean equals
/// mean_level exactly.
SceneImage generate_flat_field(int rows, int cols, double mean_level, double uniformity_pct,
                               Rect region, uint64_t seed);

} // namespace caos

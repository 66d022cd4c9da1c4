#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "caos/grid.hpp"

namespace caos {

/// Plain-text P2 graymap with the linear scale factor (irradiance per gray
/// level) carried on a comment line, plus any extra metadata comments.
struct PgmImage {
    Grid<uint16_t> gray;
    int maxval = 255;
    double scale = 0.0;                     // value ~= gray * scale
    std::optional<double> alpha;            // calibration scale, when present

    bool operator==(const PgmImage&) const = default;
};

/// Linear display mapping: gray = round(maxval * v / v_max), negatives clamp to 0.
PgmImage to_pgm_linear(const Grid<double>& image, std::optional<double> alpha = {});

/// Log display mapping over `range_db` of dynamic range below the peak:
/// gray = round(maxval * (10 log10(max(v, floor)/v_max) + R) / R).
PgmImage to_pgm_log(const Grid<double>& image, double range_db = 80.0,
                    std::optional<double> alpha = {});

void save_pgm(const PgmImage& image, const std::string& path);
PgmImage load_pgm(const std::string& path);

// Lossless CSV image exchange: optional "# alpha <v>" comment line, then
// row-major comma-separated values at full double precision.
void save_image_csv(const Grid<double>& image, const std::string& path,
                    std::optional<double> alpha = {});
struct CsvImage {
    Grid<double> values;
    std::optional<double> alpha;
};
CsvImage load_image_csv(const std::string& path);

// Integer-label CSV (patch maps, masks).
void save_label_csv(const Grid<int32_t>& labels, const std::string& path);
Grid<int32_t> load_label_csv(const std::string& path);

} // namespace caos

#include "caos/scene.hpp"

#include <cmath>
#include <random>
#include <string>

#include "caos/errors.hpp"
#include "caos/metrics.hpp"

namespace caos {

std::vector<double> TargetSpec::calibrated_attenuations_db() {
    // Vendor calibration for the first 14 patches; the remaining patches
    // continue the nominal 4.6 dB step down to the target's 160 dB floor.
    std::vector<double> a = {0.0,  4.6,  9.2,  13.8, 18.2, 22.8, 27.4,
                             32.0, 36.6, 41.2, 45.8, 50.2, 54.8, 59.4};
    while (a.size() < 36) a.push_back(a.back() + 4.6);
    return a;
}

std::vector<double> patch_attenuations_db(const TargetSpec& spec) {
    if (spec.patch_count < 1)
        throw config_error("patch_count must be >= 1");
    if (spec.total_dr_db <= 0.0)
        throw config_error("total_dr_db must be positive");
    if (!spec.dr_table_override.empty()) {
        if (spec.dr_table_override.size() != size_t(spec.patch_count))
            throw config_error("dr table override has " +
                               std::to_string(spec.dr_table_override.size()) +
                               " entries, expected " + std::to_string(spec.patch_count));
        return spec.dr_table_override;
    }
    std::vector<double> a(spec.patch_count);
    double step = spec.patch_count > 1 ? spec.total_dr_db / double(spec.patch_count - 1) : 0.0;
    for (int i = 0; i < spec.patch_count; ++i) a[i] = double(i) * step;
    return a;
}

SceneImage generate_patch_target(const TargetSpec& spec, int rows, int cols) {
    std::vector<double> atten = patch_attenuations_db(spec);
    if (spec.patch_size_px < 1 || spec.gap_px < 0 || spec.border_px < 0)
        throw config_error("invalid patch geometry");

    int grid_cols = int(std::ceil(std::sqrt(double(spec.patch_count))));
    int grid_rows = (spec.patch_count + grid_cols - 1) / grid_cols;
    int height = 2 * spec.border_px + grid_rows * spec.patch_size_px +
                 (grid_rows - 1) * spec.gap_px;
    int width = 2 * spec.border_px + grid_cols * spec.patch_size_px +
                (grid_cols - 1) * spec.gap_px;
    if (height > rows || width > cols)
        throw config_error("patch layout " + std::to_string(height) + "x" +
                           std::to_string(width) + " does not fit the " + std::to_string(rows) +
                           "x" + std::to_string(cols) + " pixel grid");

    SceneImage scene;
    scene.rows = rows;
    scene.cols = cols;
    scene.irradiance = Grid<double>(rows, cols, 0.0);
    scene.illuminated = Grid<uint8_t>(rows, cols, 0);
    scene.patch_map = Grid<int32_t>(rows, cols, 0);

    for (int i = 0; i < spec.patch_count; ++i) {
        double value = std::pow(10.0, -atten[size_t(i)] / 10.0);
        int cell_r = i / grid_cols;
        int cell_c = i % grid_cols;
        int r0 = spec.border_px + cell_r * (spec.patch_size_px + spec.gap_px);
        int c0 = spec.border_px + cell_c * (spec.patch_size_px + spec.gap_px);
        for (int r = r0; r < r0 + spec.patch_size_px; ++r)
            for (int c = c0; c < c0 + spec.patch_size_px; ++c) {
                scene.irradiance(r, c) = value;
                scene.illuminated(r, c) = 1;
                scene.patch_map(r, c) = i + 1;
            }
    }
    return scene;
}

SceneImage generate_flat_field(int rows, int cols, double mean_level, double uniformity_pct_target,
                               Rect region, uint64_t seed) {
    if (mean_level <= 0.0 || mean_level > 1.0)
        throw config_error("mean_level must be in (0, 1]");
    if (uniformity_pct_target <= 0.0 || uniformity_pct_target > 100.0)
        throw config_error("uniformity_pct must be in (0, 100]");
    if (region.row0 < 0 || region.col0 < 0 || region.rows < 1 || region.cols < 1 ||
        region.row0 + region.rows > rows || region.col0 + region.cols > cols)
        throw config_error("illuminated region exceeds the pixel grid");

    SceneImage scene;
    scene.rows = rows;
    scene.cols = cols;
    scene.irradiance = Grid<double>(rows, cols, 0.0);
    scene.illuminated = Grid<uint8_t>(rows, cols, 0);
    for (int r = region.row0; r < region.row0 + region.rows; ++r)
        for (int c = region.col0; c < region.col0 + region.cols; ++c)
            scene.illuminated(r, c) = 1;

    if (uniformity_pct_target == 100.0) {
        for (int r = region.row0; r < region.row0 + region.rows; ++r)
            for (int c = region.col0; c < region.col0 + region.cols; ++c)
                scene.irradiance(r, c) = mean_level;
        return scene;
    }

    // Smooth seeded profile: bilinear corner ramp plus two low-frequency
    // cosine bumps, centered to zero mean over the region.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.0, 1.0);
    double c00 = uni(rng), c01 = uni(rng), c10 = uni(rng), c11 = uni(rng);
    double amp1 = 0.4 + 0.6 * pos(rng), fu1 = 0.3 + 0.9 * pos(rng), fv1 = 0.3 + 0.9 * pos(rng);
    double ph1 = 2.0 * M_PI * pos(rng);
    double amp2 = 0.4 + 0.6 * pos(rng), fu2 = 0.3 + 0.9 * pos(rng), fv2 = 0.3 + 0.9 * pos(rng);
    double ph2 = 2.0 * M_PI * pos(rng);

    Grid<double> profile(rows, cols, 0.0);
    double sum = 0.0;
    long count = 0;
    for (int r = region.row0; r < region.row0 + region.rows; ++r) {
        double u = region.rows > 1 ? double(r - region.row0) / double(region.rows - 1) : 0.0;
        for (int c = region.col0; c < region.col0 + region.cols; ++c) {
            double v = region.cols > 1 ? double(c - region.col0) / double(region.cols - 1) : 0.0;
            double bilinear = c00 * (1 - u) * (1 - v) + c01 * (1 - u) * v +
                              c10 * u * (1 - v) + c11 * u * v;
            double bumps = 0.5 * amp1 * std::cos(2.0 * M_PI * (fu1 * u + fv1 * v) + ph1) +
                           0.5 * amp2 * std::cos(2.0 * M_PI * (fu2 * u + fv2 * v) + ph2);
            profile(r, c) = bilinear + bumps;
            sum += profile(r, c);
            ++count;
        }
    }
    double mean_p = sum / double(count);
    double pmax = -1e300, pmin = 1e300;
    for (int r = region.row0; r < region.row0 + region.rows; ++r)
        for (int c = region.col0; c < region.col0 + region.cols; ++c) {
            profile(r, c) -= mean_p;
            pmax = std::max(pmax, profile(r, c));
            pmin = std::min(pmin, profile(r, c));
        }
    if (pmax - pmin < 1e-12)
        throw config_error("degenerate flat-field profile");

    auto fill = [&](double beta) {
        for (int r = region.row0; r < region.row0 + region.rows; ++r)
            for (int c = region.col0; c < region.col0 + region.cols; ++c)
                scene.irradiance(r, c) = mean_level * (1.0 + beta * profile(r, c));
    };
    auto measure = [&](double beta) {
        fill(beta);
        return caos::uniformity_pct(scene.irradiance, scene.illuminated);
    };

    // Closed form on the raw extremes seeds the bracket; the median-filtered
    // metric is then pinned by bisection.
    double tau = 1.0 - uniformity_pct_target / 100.0;
    double beta = 2.0 * tau / ((pmax - pmin) - tau * (pmax + pmin));
    double lo = 0.0, hi = beta;
    while (measure(hi) > uniformity_pct_target) {
        hi *= 2.0;
        if (hi > 1e6) throw config_error("flat-field calibration failed to bracket");
    }
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        double u = measure(mid);
        if (std::abs(u - uniformity_pct_target) <= 0.02) {
            lo = hi = mid;
            break;
        }
        if (u > uniformity_pct_target)
            lo = mid;
        else
            hi = mid;
    }
    fill(0.5 * (lo + hi));

    // Rescaling to the exact mean leaves the ratio metric untouched.
    double m = mean_over(scene.irradiance, scene.illuminated);
    double gain = mean_level / m;
    double vmin = 1e300;
    for (int r = region.row0; r < region.row0 + region.rows; ++r)
        for (int c = region.col0; c < region.col0 + region.cols; ++c) {
            scene.irradiance(r, c) *= gain;
            vmin = std::min(vmin, scene.irradiance(r, c));
        }
    if (vmin < 0.0)
        throw config_error("flat-field uniformity " + std::to_string(uniformity_pct_target) +
                           "% needs negative irradiance at mean " + std::to_string(mean_level));
    return scene;
}

} // namespace caos

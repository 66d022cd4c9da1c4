#include "caos/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "caos/errors.hpp"

namespace caos {

double dr_db(double p_ref, double p) {
    if (p_ref <= 0.0 || p <= 0.0)
        throw config_error("dr_db requires positive powers");
    return 10.0 * std::log10(p_ref / p);
}

Grid<double> median3x3(const Grid<double>& image, const Grid<uint8_t>& region) {
    if (image.rows() != region.rows() || image.cols() != region.cols())
        throw config_error("median3x3: image/region dimension mismatch");
    Grid<double> out(image.rows(), image.cols(), 0.0);
    double window[9];
    for (int r = 0; r < image.rows(); ++r) {
        for (int c = 0; c < image.cols(); ++c) {
            if (!region(r, c)) continue;
            int n = 0;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    int rr = r + dr, cc = c + dc;
                    if (rr < 0 || rr >= image.rows() || cc < 0 || cc >= image.cols()) continue;
                    if (!region(rr, cc)) continue;
                    window[n++] = image(rr, cc);
                }
            }
            std::sort(window, window + n);
            out(r, c) = (n % 2) ? window[n / 2] : 0.5 * (window[n / 2 - 1] + window[n / 2]);
        }
    }
    return out;
}

double mean_over(const Grid<double>& image, const Grid<uint8_t>& region) {
    double sum = 0.0;
    long count = 0;
    for (int r = 0; r < image.rows(); ++r)
        for (int c = 0; c < image.cols(); ++c)
            if (region(r, c)) {
                sum += image(r, c);
                ++count;
            }
    if (count == 0) throw config_error("empty region");
    return sum / double(count);
}

double uniformity_pct(const Grid<double>& image, const Grid<uint8_t>& region) {
    Grid<double> smoothed = median3x3(image, region);
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin;
    long count = 0;
    for (int r = 0; r < image.rows(); ++r)
        for (int c = 0; c < image.cols(); ++c)
            if (region(r, c)) {
                vmin = std::min(vmin, smoothed(r, c));
                vmax = std::max(vmax, smoothed(r, c));
                ++count;
            }
    if (count == 0) throw config_error("empty region");
    if (vmax + vmin <= 0.0) return 0.0;
    double u = 100.0 * (1.0 - (vmax - vmin) / (vmax + vmin));
    return std::clamp(u, 0.0, 100.0);
}

PatchReport patch_snr(const Grid<double>& decoded, const Grid<int32_t>& patch_map,
                      const Grid<uint8_t>& dark_mask,
                      const std::vector<double>& truth_attenuations_db) {
    if (decoded.rows() != patch_map.rows() || decoded.cols() != patch_map.cols() ||
        decoded.rows() != dark_mask.rows() || decoded.cols() != dark_mask.cols())
        throw config_error("patch_snr: dimension mismatch");

    double sq_sum = 0.0;
    long dark_count = 0;
    for (int r = 0; r < decoded.rows(); ++r)
        for (int c = 0; c < decoded.cols(); ++c)
            if (dark_mask(r, c)) {
                sq_sum += decoded(r, c) * decoded(r, c);
                ++dark_count;
            }
    if (dark_count < 30)
        throw config_error("patch_snr needs >= 30 dark pixels, found " +
                           std::to_string(dark_count));
    double dark_rms = std::sqrt(sq_sum / double(dark_count));

    // Interior = one-pixel erosion with the 8-connected neighborhood.
    auto interior = [&](int r, int c) {
        int32_t label = patch_map(r, c);
        for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc) {
                int rr = r + dr, cc = c + dc;
                if (rr < 0 || rr >= patch_map.rows() || cc < 0 || cc >= patch_map.cols())
                    return false;
                if (patch_map(rr, cc) != label) return false;
            }
        return true;
    };

    std::map<int32_t, std::pair<double, long>> sums;   // label -> (sum, count)
    for (int r = 0; r < decoded.rows(); ++r)
        for (int c = 0; c < decoded.cols(); ++c) {
            int32_t label = patch_map(r, c);
            if (label <= 0) continue;
            if (!interior(r, c)) continue;
            auto& acc = sums[label];
            acc.first += decoded(r, c);
            acc.second += 1;
        }
    if (sums.empty()) throw config_error("patch_snr: no patches in patch map");

    PatchReport report;
    report.dark_rms = dark_rms;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    double signal1 = 0.0;
    for (auto& [label, acc] : sums) {
        if (acc.second < 4)
            throw config_error("patch " + std::to_string(label) + " has only " +
                               std::to_string(acc.second) + " interior pixels (need >= 4)");
        double signal = acc.first / double(acc.second);
        if (label == sums.begin()->first) signal1 = signal;

        PatchStats stats;
        stats.patch_id = int(label);
        stats.dr_db = (size_t(label) <= truth_attenuations_db.size())
                          ? truth_attenuations_db[size_t(label) - 1]
                          : nan;
        if (dark_rms > 0.0)
            stats.snr = std::max(0.0, signal / dark_rms);
        else
            stats.snr = signal > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        stats.recovered = stats.snr > 1.0;
        stats.measured_db =
            (signal > 0.0 && signal1 > 0.0) ? dr_db(signal1, signal) : nan;
        report.patches.push_back(stats);
    }
    return report;
}

LinearityFit linearity_fit(const PatchReport& report) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int n = 0;
    for (const auto& p : report.patches) {
        if (!p.recovered || !std::isfinite(p.measured_db) || !std::isfinite(p.dr_db))
            continue;
        sx += p.dr_db;
        sy += p.measured_db;
        sxx += p.dr_db * p.dr_db;
        sxy += p.dr_db * p.measured_db;
        syy += p.measured_db * p.measured_db;
        ++n;
    }
    if (n < 2)
        throw config_error("linearity fit needs >= 2 recovered patches, found " +
                           std::to_string(n));
    double denom = double(n) * sxx - sx * sx;
    if (denom == 0.0) throw config_error("linearity fit: degenerate abscissae");
    LinearityFit fit;
    fit.points = n;
    fit.slope = (double(n) * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / double(n);
    double ss_tot = syy - sy * sy / double(n);
    double ss_res = 0.0;
    for (const auto& p : report.patches) {
        if (!p.recovered || !std::isfinite(p.measured_db) || !std::isfinite(p.dr_db))
            continue;
        double e = p.measured_db - (fit.slope * p.dr_db + fit.intercept);
        ss_res += e * e;
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

} // namespace caos

#pragma once

#include <string>
#include <vector>

#include "caos/metrics.hpp"

namespace caos {

// Patch report CSV, column order: patch, dr_db, m_db, snr.
void save_patch_report_csv(const PatchReport& report, const std::string& path);
PatchReport load_patch_report_csv(const std::string& path);

// Ground-truth attenuation table CSV: patch, dr_db.
void save_dr_table_csv(const std::vector<double>& attenuations_db, const std::string& path);
std::vector<double> load_dr_table_csv(const std::string& path);

void save_linearity_json(const LinearityFit& fit, const std::string& path);
LinearityFit load_linearity_json(const std::string& path);

// Fitted points as a two-column CSV: dr_db, m_db (recovered patches).
void save_linearity_points_csv(const PatchReport& report, const std::string& path);

struct FlatFieldReport {
    double mean = 0.0;
    double uniformity_pct = 0.0;
    int region_pixels = 0;
};
void save_flat_report_json(const FlatFieldReport& report, const std::string& path);
FlatFieldReport load_flat_report_json(const std::string& path);

} // namespace caos

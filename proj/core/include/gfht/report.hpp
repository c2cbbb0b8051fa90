#pragma once

#include <string>

#include "gfht/analysis.hpp"

namespace gfht {

// Stable-key-order JSON document for a finished report; byte-identical
// across runs with the same inputs and config.
std::string report_to_json(const MetricsReport& report);

// Plot-ready CSV files (scatter pairs, spectra, eigenvalue clouds,
// per-window chi-square traces) under dir, which is created if missing.
void write_plot_csvs(const BatteryResult& result, const RgbImage& plain,
                     const std::string& dir);

// Measured headline numbers next to the published reference ciphers.
// Literature rows are transcribed constants, flagged as such.
std::string reference_rows_table(const MetricsReport& report);

}  // namespace gfht

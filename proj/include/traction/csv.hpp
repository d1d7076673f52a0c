// CSV readers/writers for sensor and estimate logs and the analysis outputs.
// Layout: header row, comma separator, '.' decimal point, UTF-8, LF line
// endings. Sensor logs carry the measurement/input columns first and the
// ground-truth extras in truth_-prefixed columns after them. Files are
// written atomically (temp + rename). Malformed input raises DataError
// naming the file and line.
#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "traction/analysis.hpp"
#include "traction/records.hpp"

namespace traction::csv {

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_sensor_csv(const std::string& path,
                      std::span<const SensorRecord> records);
std::vector<SensorRecord> read_sensor_csv(const std::string& path);

void write_estimate_csv(const std::string& path,
                        std::span<const EstimateRecord> records);
std::vector<EstimateRecord> read_estimate_csv(const std::string& path);

// Plot-ready bin table: s_mid, count, mean_mu, sd_mu, model value a*g(s_mid).
void write_bins_csv(const std::string& path,
                    std::span<const analysis::SlipBin> bins,
                    const analysis::FitResult& fit);

void write_fit_csv(const std::string& path, const analysis::FitResult& fit);

void write_sections_csv(const std::string& path,
                        std::span<const analysis::SectionStats> stats);

void write_events_csv(const std::string& path, std::span<const double> events);

}  // namespace traction::csv

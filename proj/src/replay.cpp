#include "traction/replay.hpp"

namespace traction {

ReplayResult replay(std::span<const SensorRecord> log,
                    const EstimatorConfig& cfg) {
  ReplayResult out;
  out.total = log.size();
  if (log.empty()) return out;

  TractionEstimator filter(cfg);
  out.estimates.reserve(log.size());
  for (const SensorRecord& rec : log) {
    try {
      out.estimates.push_back(filter.step(rec));
    } catch (const std::exception&) {
      ++out.skipped;
    }
  }
  if (out.skipped * 100 > out.total)
    throw ReplayError("replay failed: " + std::to_string(out.skipped) + " of " +
                      std::to_string(out.total) + " records skipped (> 1%)");
  return out;
}

}  // namespace traction

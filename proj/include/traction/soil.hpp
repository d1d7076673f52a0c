// Empirical adhesion-slip characteristic mu(s) = a(1 - p e^{a1 s}
// - (1-p) e^{a2 s}), a named catalog of ground types, and a piecewise map
// from path position to ground type. Catalog and map are immutable after
// load, so reads are concurrency-safe.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace traction::soil {

struct SoilCurveParams {
  std::string name;
  double a = 1.0;       // scale; the one parameter varied across conditions
  double p = 0.52;      // mixing weight in [0, 1]
  double alpha1 = 0.0;  // slow exponent
  double alpha2 = 0.0;  // fast exponent (strongly negative for real soils)
  double rho_s = 0.0;   // soil rolling resistance coefficient

  void validate() const;
};

// mu(0) = 0 exactly, by construction of the model form.
double mu_of_s(const SoilCurveParams& params, double s);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class SoilCatalog {
 public:
  void add(SoilCurveParams params);
  const SoilCurveParams* find(const std::string& name) const;
  const SoilCurveParams& at(const std::string& name) const;
  std::size_t size() const { return soils_.size(); }
  const std::vector<SoilCurveParams>& entries() const { return soils_; }

  // The five ground types used throughout the benchmarks: hard, fine, wet,
  // coarse, grass. Shared shape p=0.52, alpha1=0.01, alpha2=-11.36; scale a
  // per type (1.42, 0.85, 0.83, 0.91, 0.4). The rho_s values are synthetic
  // defaults; they are the benchmark's own ground truth, not field data.
  static SoilCatalog builtin();

 private:
  std::vector<SoilCurveParams> soils_;
};

// Breakpoints (start position, soil name); the soil holds from its start
// position up to the next breakpoint, and the last soil extends to infinity.
class SoilMap {
 public:
  SoilMap() = default;
  SoilMap(std::vector<std::pair<double, std::string>> breakpoints,
          const SoilCatalog& catalog);

  const std::vector<std::pair<double, std::string>>& breakpoints() const {
    return breaks_;
  }

  const SoilCurveParams& soil_at(const SoilCatalog& catalog,
                                 double position) const;

 private:
  std::vector<std::pair<double, std::string>> breaks_;
};

}  // namespace traction::soil

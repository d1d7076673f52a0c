#include "traction/soil.hpp"

#include <cmath>
#include <string>

namespace traction::soil {

void SoilCurveParams::validate() const {
  if (name.empty()) throw ConfigError("soil: name must be nonempty");
  const std::string at = "soil '" + name + "': ";
  if (!(a > 0.0)) throw ConfigError(at + "a must be > 0");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(at + "p must be in [0,1]");
  if (!(rho_s >= 0.0)) throw ConfigError(at + "rho_s must be >= 0");
  if (!std::isfinite(alpha1) || !std::isfinite(alpha2))
    throw ConfigError(at + "alpha1/alpha2 must be finite");
}

double mu_of_s(const SoilCurveParams& params, double s) {
  return params.a * (1.0 - params.p * std::exp(params.alpha1 * s) -
                     (1.0 - params.p) * std::exp(params.alpha2 * s));
}

void SoilCatalog::add(SoilCurveParams params) {
  params.validate();
  if (find(params.name))
    throw ConfigError("soil catalog: duplicate name '" + params.name + "'");
  soils_.push_back(std::move(params));
}

const SoilCurveParams* SoilCatalog::find(const std::string& name) const {
  for (const SoilCurveParams& s : soils_)
    if (s.name == name) return &s;
  return nullptr;
}

const SoilCurveParams& SoilCatalog::at(const std::string& name) const {
  if (const SoilCurveParams* s = find(name)) return *s;
  throw ConfigError("soil catalog: unknown soil '" + name + "'");
}

SoilCatalog SoilCatalog::builtin() {
  SoilCatalog c;
  const double p = 0.52, a1 = 0.01, a2 = -11.36;
  c.add({"hard", 1.42, p, a1, a2, 0.05});
  c.add({"fine", 0.85, p, a1, a2, 0.10});
  c.add({"wet", 0.83, p, a1, a2, 0.10});
  c.add({"coarse", 0.91, p, a1, a2, 0.12});
  c.add({"grass", 0.40, p, a1, a2, 0.05});
  return c;
}

SoilMap::SoilMap(std::vector<std::pair<double, std::string>> breakpoints,
                 const SoilCatalog& catalog)
    : breaks_(std::move(breakpoints)) {
  if (breaks_.empty()) throw ConfigError("soil map: must have at least one entry");
  if (breaks_.front().first != 0.0)
    throw ConfigError("soil map: first breakpoint must start at position 0");
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    if (i > 0 && !(breaks_[i].first > breaks_[i - 1].first))
      throw ConfigError("soil map: positions must be strictly increasing (entry " +
                        std::to_string(i) + ")");
    catalog.at(breaks_[i].second);  // unresolved names fail at load time
  }
}

const SoilCurveParams& SoilMap::soil_at(const SoilCatalog& catalog,
                                        double position) const {
  if (position < 0.0)
    throw std::invalid_argument("soil_at: position must be >= 0");
  std::size_t idx = 0;
  while (idx + 1 < breaks_.size() && position >= breaks_[idx + 1].first) ++idx;
  return catalog.at(breaks_[idx].second);
}

}  // namespace traction::soil

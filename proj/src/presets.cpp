#include "debranges/presets.hpp"

#include <numbers>

#include "debranges/errors.hpp"

namespace debranges {

Preset paley_wiener_preset() {
  const auto e = HermiteBiehler::exponential(std::numbers::pi);
  return {"pw", e, e};
}

Preset polynomial_preset() {
  return {"nonpw", HermiteBiehler(std::numbers::pi, {cplx{0.0, -1.0}}),
          HermiteBiehler::exponential(std::numbers::pi)};
}

std::vector<Preset> all_presets() { return {paley_wiener_preset(), polynomial_preset()}; }

Preset preset_by_name(const std::string& name) {
  for (Preset& p : all_presets()) {
    if (p.name == name) return p;
  }
  throw InputError("unknown preset '" + name + "' (expected pw or nonpw)");
}

}  // namespace debranges

#pragma once

#include <string>
#include <vector>

#include "debranges/hermite_biehler.hpp"

namespace debranges {

/// A named (E, F) pair.
struct Preset {
  std::string name;
  HermiteBiehler e;
  HermiteBiehler f;
};

/// "pw": E = F = exp(-i pi z), the Paley-Wiener modulation example.
Preset paley_wiener_preset();
/// "nonpw": E = (z + i) exp(-i pi z), F = exp(-i pi z).
Preset polynomial_preset();

std::vector<Preset> all_presets();
/// Throws InputError for unknown names.
Preset preset_by_name(const std::string& name);

}  // namespace debranges

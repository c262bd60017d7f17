#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "debranges/presets.hpp"
#include "debranges/quadrature.hpp"

namespace debranges {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
};

/// Randomized invariant checks across every module for one (E, F) pair.
std::vector<CheckResult> verify_preset(const Preset& preset, std::uint64_t seed,
                                       const QuadratureSpec& quad = {});

void print_check_table(std::ostream& os, const std::string& title,
                       const std::vector<CheckResult>& rows);

}  // namespace debranges

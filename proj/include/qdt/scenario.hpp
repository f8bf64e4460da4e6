#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qdt/types.hpp"

namespace qdt {

enum class Reduction { None, SB, ICC };

std::string_view to_string(Reduction reduction);

/// A complete, immutable simulation setup: the dot system, its leads (in role
/// order l, r[, u]) and an optional reduction constraint already applied.
/// Warnings collect non-fatal notes recorded while building (overwritten
/// temperatures, unusual level ordering).
struct Scenario {
  SystemSpec system;
  std::vector<ReservoirSpec> reservoirs;
  Reduction reduction = Reduction::None;
  std::vector<std::string> warnings;

  bool is_cqd() const { return system.dots.size() == 2; }
  const ReservoirSpec& lead(std::size_t role) const;
  const ReservoirSpec& lead(std::string_view id) const;
};

/// Cross-checks ids, couplings and spin compatibility; throws on violation.
void validate_scenario(const Scenario& scenario);

}  // namespace qdt

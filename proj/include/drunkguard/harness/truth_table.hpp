#pragma once

#include "drunkguard/fusion/engine.hpp"

#include <array>
#include <string>

namespace drunkguard::harness {

struct TruthRow {
  fusion::FlagVector flags;
  bool fire = false;
};

/// All eight flag combinations, a as the most significant bit (000 .. 111).
[[nodiscard]] std::array<TruthRow, 8> truth_table(fusion::Policy policy);

/// Printable table: header line, then "a h d  c  FIRE|-" per row.
[[nodiscard]] std::string format_truth_table(fusion::Policy policy);

}  // namespace drunkguard::harness

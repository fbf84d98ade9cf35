#include "drunkguard/harness/truth_table.hpp"

namespace drunkguard::harness {

std::array<TruthRow, 8> truth_table(fusion::Policy policy) {
  std::array<TruthRow, 8> rows{};
  for (unsigned bits = 0; bits < 8; ++bits) {
    const fusion::FlagVector f{(bits & 4U) != 0, (bits & 2U) != 0, (bits & 1U) != 0};
    rows[bits] = TruthRow{f, fusion::fire(f, policy)};
  }
  return rows;
}

std::string format_truth_table(fusion::Policy policy) {
  std::string out = "policy: " + std::string(fusion::to_string(policy)) + "\n";
  out += "a h d  c  fire\n";
  for (const TruthRow& row : truth_table(policy)) {
    out += row.flags.a ? '1' : '0';
    out += ' ';
    out += row.flags.h ? '1' : '0';
    out += ' ';
    out += row.flags.d ? '1' : '0';
    out += "  ";
    out += std::to_string(row.flags.count());
    out += "  ";
    out += row.fire ? "FIRE" : "-";
    out += '\n';
  }
  return out;
}

}  // namespace drunkguard::harness

#pragma once

#include <cstdint>
#include <vector>

namespace holosurf {
namespace protocols {

// Parity structure of a distillation routine: the reversed encoder measures
// `checks` (bitmask supports over the inputs) and accepts on trivial
// syndrome; the output carries the parity of the flip pattern against
// `logical`. Twirled inputs make single-parameter flip patterns sufficient.
struct DistillationCode {
  int n = 0;
  std::vector<uint32_t> checks;
  uint32_t logical = 0;

  static DistillationCode steane_y();  // 7-to-1, Hamming checks
  static DistillationCode rm15_a();    // 15-to-1, punctured Reed-Muller checks
};

struct PatternResult {
  bool accepted = false;
  bool output_flipped = false;
};

PatternResult run_pattern(const DistillationCode& code, uint32_t flips);

struct DistillStats {
  double accept_prob = 0.0;
  double output_infidelity = 0.0;
};

// Exact enumeration over all flip patterns with independent input
// infidelities.
DistillStats distill_exact(const DistillationCode& code,
                           const std::vector<double>& eps);

}  // namespace protocols
}  // namespace holosurf

#include "holosurf/distillation.hpp"

#include <bit>
#include <stdexcept>

namespace holosurf {
namespace protocols {

DistillationCode DistillationCode::steane_y() {
  DistillationCode c;
  c.n = 7;
  c.checks = {0x55, 0x33, 0x0F};  // Hamming(7,4) parity rows
  c.logical = 0x7F;
  return c;
}

DistillationCode DistillationCode::rm15_a() {
  DistillationCode c;
  c.n = 15;
  // qubit i (1-based, bit i-1) sits in check k exactly when bit k of i is set
  c.checks = {0x5555, 0x6666, 0x7878, 0x7F80};
  c.logical = 0x7FFF;
  return c;
}

PatternResult run_pattern(const DistillationCode& code, uint32_t flips) {
  PatternResult r;
  r.accepted = true;
  for (uint32_t chk : code.checks) {
    if (std::popcount(flips & chk) & 1) {
      r.accepted = false;
      break;
    }
  }
  r.output_flipped = (std::popcount(flips & code.logical) & 1) != 0;
  return r;
}

DistillStats distill_exact(const DistillationCode& code,
                           const std::vector<double>& eps) {
  if (eps.size() != static_cast<std::size_t>(code.n)) {
    throw std::invalid_argument("one infidelity per input required");
  }
  double accept_mass = 0.0;
  double flip_mass = 0.0;
  const uint32_t full = (1u << code.n) - 1;
  for (uint32_t pattern = 0; pattern <= full; ++pattern) {
    double w = 1.0;
    for (int i = 0; i < code.n; ++i) {
      w *= (pattern >> i & 1) ? eps[static_cast<std::size_t>(i)]
                              : 1.0 - eps[static_cast<std::size_t>(i)];
    }
    const PatternResult r = run_pattern(code, pattern);
    if (r.accepted) {
      accept_mass += w;
      if (r.output_flipped) flip_mass += w;
    }
  }
  DistillStats s;
  s.accept_prob = accept_mass;
  s.output_infidelity = accept_mass > 0 ? flip_mass / accept_mass : 0.0;
  return s;
}

}  // namespace protocols
}  // namespace holosurf

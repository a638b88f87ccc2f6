#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace holosurf {

// Abstract minimum-weight matching instance: every node must either pair
// with another node or, where allowed, terminate on the boundary.
struct MatchInstance {
  static constexpr long long kNoBoundary =
      std::numeric_limits<long long>::max() / 4;

  std::size_t n = 0;
  std::vector<long long> pair_w;      // n*n symmetric, diagonal ignored
  std::vector<long long> boundary_w;  // per node; kNoBoundary if none

  long long& pw(std::size_t i, std::size_t j) { return pair_w[i * n + j]; }
  long long pw(std::size_t i, std::size_t j) const { return pair_w[i * n + j]; }
};

struct Matching {
  std::vector<int> mate;  // mate[i] = partner index, or -1 for the boundary
  long long weight = 0;
};

// Exact minimum-weight matching. Nodes up to the DP budget (default 22) are
// solved by subset dynamic programming; ties break deterministically with
// the boundary option first, then partners in index order. Throws when the
// instance exceeds the budget or has no feasible matching.
Matching match_exact(const MatchInstance& inst, std::size_t dp_budget = 22);

// Independent oracle: full enumeration of all pairings (practical n <= 12).
Matching match_brute_force(const MatchInstance& inst);

}  // namespace holosurf

#include "holosurf/matching.hpp"

#include <stdexcept>

namespace holosurf {

Matching match_exact(const MatchInstance& inst, std::size_t dp_budget) {
  const std::size_t n = inst.n;
  if (n == 0) return Matching{{}, 0};
  if (n > dp_budget || n >= 63) {
    throw std::invalid_argument("matching instance exceeds the exact budget");
  }
  const long long INF = MatchInstance::kNoBoundary;
  const auto full = (1ULL << n) - 1;
  std::vector<long long> cost(1ULL << n, INF);
  // choice: -1 boundary for the lowest bit, else the partner index
  std::vector<int8_t> choice(1ULL << n, -2);
  cost[0] = 0;
  for (uint64_t mask = 1; mask <= full; ++mask) {
    int i = 0;
    while (!(mask >> i & 1)) ++i;
    const uint64_t rest = mask ^ (1ULL << i);
    // boundary first; ties keep the earlier option
    if (inst.boundary_w[static_cast<std::size_t>(i)] < INF &&
        cost[rest] < INF) {
      const long long c =
          inst.boundary_w[static_cast<std::size_t>(i)] + cost[rest];
      if (c < cost[mask]) {
        cost[mask] = c;
        choice[mask] = -1;
      }
    }
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      const uint64_t rest2 = rest ^ (1ULL << j);
      if (cost[rest2] >= INF) continue;
      const long long w = inst.pw(static_cast<std::size_t>(i), j);
      if (w >= INF) continue;
      const long long c = w + cost[rest2];
      if (c < cost[mask]) {
        cost[mask] = c;
        choice[mask] = static_cast<int8_t>(j);
      }
    }
  }
  if (cost[full] >= INF) {
    throw std::invalid_argument("matching instance is infeasible");
  }
  Matching m;
  m.mate.assign(n, -1);
  m.weight = cost[full];
  uint64_t mask = full;
  while (mask) {
    int i = 0;
    while (!(mask >> i & 1)) ++i;
    const int8_t ch = choice[mask];
    if (ch == -1) {
      m.mate[static_cast<std::size_t>(i)] = -1;
      mask ^= 1ULL << i;
    } else {
      m.mate[static_cast<std::size_t>(i)] = ch;
      m.mate[static_cast<std::size_t>(ch)] = i;
      mask ^= (1ULL << i) | (1ULL << ch);
    }
  }
  return m;
}

namespace {

void enumerate(const MatchInstance& inst, std::vector<int>& mate,
               uint64_t used, long long acc, Matching& best) {
  const std::size_t n = inst.n;
  std::size_t i = 0;
  while (i < n && (used >> i & 1)) ++i;
  if (i == n) {
    if (acc < best.weight) {
      best.weight = acc;
      best.mate = mate;
    }
    return;
  }
  used |= 1ULL << i;
  if (inst.boundary_w[i] < MatchInstance::kNoBoundary) {
    mate[i] = -1;
    enumerate(inst, mate, used, acc + inst.boundary_w[i], best);
  }
  for (std::size_t j = i + 1; j < n; ++j) {
    if (used >> j & 1) continue;
    if (inst.pw(i, j) >= MatchInstance::kNoBoundary) continue;
    mate[i] = static_cast<int>(j);
    mate[j] = static_cast<int>(i);
    enumerate(inst, mate, used | (1ULL << j), acc + inst.pw(i, j), best);
    mate[j] = -2;
  }
  mate[i] = -2;
}

}  // namespace

Matching match_brute_force(const MatchInstance& inst) {
  Matching best;
  best.weight = MatchInstance::kNoBoundary;
  best.mate.assign(inst.n, -1);
  std::vector<int> mate(inst.n, -2);
  enumerate(inst, mate, 0, 0, best);
  if (best.weight >= MatchInstance::kNoBoundary) {
    throw std::invalid_argument("matching instance is infeasible");
  }
  return best;
}

}  // namespace holosurf

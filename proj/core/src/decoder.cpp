#include "holosurf/decoder.hpp"

#include <stdexcept>

namespace holosurf {

std::vector<DetectionEvent> detection_events(const SyndromeHistory& h) {
  std::vector<DetectionEvent> events;
  if (h.rounds.empty()) {
    throw std::invalid_argument("syndrome history needs at least one round");
  }
  const std::size_t ng = h.rounds.front().size();
  for (std::size_t r = 0; r < h.rounds.size(); ++r) {
    if (h.rounds[r].size() != ng) {
      throw std::invalid_argument("ragged syndrome history");
    }
    for (std::size_t g = 0; g < ng; ++g) {
      const int prev = r == 0 ? +1 : h.rounds[r - 1][g];
      if (h.rounds[r][g] != prev) {
        events.push_back({static_cast<uint32_t>(g), r});
      }
    }
  }
  return events;
}

Decoder::Decoder(const Lattice& lat)
    : lat_(&lat),
      zstring_(StringGraph::build(lat, StringKind::ZString)),
      xstring_(StringGraph::build(lat, StringKind::XString)) {
  auto all_pairs = [](const StringGraph& g) {
    std::vector<std::vector<int>> d;
    const auto n = g.num_real_nodes() + 2;
    d.reserve(n);
    for (uint32_t v = 0; v < n; ++v) d.push_back(g.distances({v}));
    return d;
  };
  zdist_ = all_pairs(zstring_);
  xdist_ = all_pairs(xstring_);
}

int Decoder::spatial_distance(StringKind kind, uint32_t gen_a,
                              uint32_t gen_b) const {
  const StringGraph& g = graph(kind);
  return dists(kind)[g.node_of_generator(gen_a)][g.node_of_generator(gen_b)];
}

Decoder::KindDecode Decoder::decode_kind(
    StringKind kind, const std::vector<DetectionEvent>& events) const {
  const StringGraph& g = graph(kind);
  const auto& dist = dists(kind);

  KindDecode out;
  out.events = events;
  const std::size_t n = events.size();
  out.instance.n = n;
  out.instance.pair_w.assign(n * n, MatchInstance::kNoBoundary);
  out.instance.boundary_w.assign(n, MatchInstance::kNoBoundary);
  for (std::size_t i = 0; i < n; ++i) {
    const uint32_t node_i = g.node_of_generator(events[i].gen);
    const int da = dist[node_i][g.virtual_a()];
    const int db = dist[node_i][g.virtual_b()];
    out.instance.boundary_w[i] = std::min(da, db);
    for (std::size_t j = i + 1; j < n; ++j) {
      const uint32_t node_j = g.node_of_generator(events[j].gen);
      const long long dr =
          events[i].round > events[j].round
              ? static_cast<long long>(events[i].round - events[j].round)
              : static_cast<long long>(events[j].round - events[i].round);
      const long long w = dist[node_i][node_j] + dr;
      out.instance.pw(i, j) = w;
      out.instance.pw(j, i) = w;
    }
  }
  out.matching = match_exact(out.instance);

  const Axis axis = kind == StringKind::XString ? Axis::X : Axis::Z;
  PauliOp corr;
  for (std::size_t i = 0; i < n; ++i) {
    const int mate = out.matching.mate[i];
    const uint32_t node_i = g.node_of_generator(events[i].gen);
    std::vector<QubitId> path;
    if (mate < 0) {
      const int da = dist[node_i][g.virtual_a()];
      const int db = dist[node_i][g.virtual_b()];
      path = g.shortest_path(node_i, da <= db ? g.virtual_a() : g.virtual_b());
    } else if (static_cast<std::size_t>(mate) > i) {
      path = g.shortest_path(node_i, g.node_of_generator(events[mate].gen));
    } else {
      continue;
    }
    for (QubitId q : path) corr = corr * PauliOp::single(q, axis);
  }
  out.correction = corr;
  return out;
}

Decoder::Result Decoder::decide_and_correct(const SyndromeHistory& h,
                                            const PauliOp& frame,
                                            const PauliOp& logical_x,
                                            const PauliOp& logical_z) const {
  const auto events = detection_events(h);
  std::vector<DetectionEvent> plaquette_events, vertex_events;
  for (const auto& e : events) {
    if (lat_->generator(e.gen).kind == GenKind::Zp) {
      plaquette_events.push_back(e);
    } else {
      vertex_events.push_back(e);
    }
  }
  Result res;
  res.x_side = decode_kind(StringKind::XString, plaquette_events);
  res.z_side = decode_kind(StringKind::ZString, vertex_events);
  res.correction = res.x_side.correction * res.z_side.correction;
  res.residual = (frame * res.correction).bare();
  res.failure_x = !res.residual.commutes_with(logical_z);
  res.failure_z = !res.residual.commutes_with(logical_x);
  return res;
}

MovementVote movement_vote(const std::vector<std::vector<int>>& rows, int d) {
  if (d % 8 != 0 || d <= 0) {
    throw std::invalid_argument("movement vote needs d divisible by 8");
  }
  const std::size_t want_rows = static_cast<std::size_t>(d / 4);
  const std::size_t want_cols = static_cast<std::size_t>(d / 8);
  if (rows.size() != want_rows) {
    throw std::invalid_argument("movement vote: wrong row count");
  }
  MovementVote out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != want_cols) {
      throw std::invalid_argument("movement vote: wrong row length");
    }
    std::size_t minus = 0;
    for (int v : rows[r]) minus += v < 0 ? 1 : 0;
    if (2 * minus >= want_cols) {
      out.trigger_full_ec = true;
      out.flagged_rows.push_back(r);
    }
  }
  return out;
}

int contact_vote(const std::vector<int>& outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("empty vote");
  long long sum = 0;
  for (int v : outcomes) sum += v > 0 ? 1 : -1;
  if (sum == 0) throw std::runtime_error("contact vote tie");
  return sum > 0 ? +1 : -1;
}

}  // namespace holosurf

#include "holosurf/lattice.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace holosurf {

PauliOp GeneratorDef::pauli() const {
  PauliOp p;
  const Axis a = kind == GenKind::Xs ? Axis::X : Axis::Z;
  for (QubitId q : support) p.set_factor(q, a);
  return p;
}

bool HoleRegion::contains(GridPos p) const {
  const int dr = p.row - anchor.row;
  const int dc = p.col - anchor.col;
  if (dr < 0 || dc < 0 || (dr & 1) || (dc & 1)) return false;
  return dr / 2 < height && dc / 2 < width;
}

std::vector<GridPos> HoleRegion::positions() const {
  std::vector<GridPos> out;
  out.reserve(static_cast<std::size_t>(width) * height);
  for (int i = 0; i < height; ++i) {
    for (int j = 0; j < width; ++j) {
      out.push_back({anchor.row + 2 * i, anchor.col + 2 * j});
    }
  }
  return out;
}

Lattice Lattice::build(int L) {
  if (L < 2) throw std::invalid_argument("lattice size must be >= 2");
  Lattice lat;
  lat.L_ = L;
  const int n = 2 * L - 1;
  lat.grid_qubit_.assign(static_cast<std::size_t>(n) * n, -1);
  lat.grid_gen_.assign(static_cast<std::size_t>(n) * n, -1);

  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (((r + c) & 1) == 0) {
        lat.grid_qubit_[r * n + c] = static_cast<int>(lat.qubit_pos_.size());
        lat.qubit_pos_.push_back({r, c});
      }
    }
  }

  auto add_gen = [&](GenKind kind, GridPos p) {
    GeneratorDef g;
    g.kind = kind;
    g.pos = p;
    // north, west, east, south
    const GridPos nb[4] = {{p.row - 1, p.col},
                           {p.row, p.col - 1},
                           {p.row, p.col + 1},
                           {p.row + 1, p.col}};
    for (const GridPos& q : nb) {
      if (lat.in_grid(q)) g.support.push_back(lat.qubit_at(q));
    }
    lat.grid_gen_[p.row * n + p.col] = static_cast<int>(lat.gens_.size());
    lat.gens_.push_back(std::move(g));
  };

  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (r % 2 == 0 && c % 2 == 1) add_gen(GenKind::Zp, {r, c});
      if (r % 2 == 1 && c % 2 == 0) add_gen(GenKind::Xs, {r, c});
    }
  }

  lat.qubit_gens_.resize(lat.qubit_pos_.size());
  for (uint32_t g = 0; g < lat.gens_.size(); ++g) {
    for (QubitId q : lat.gens_[g].support) lat.qubit_gens_[q].push_back(g);
  }
  return lat;
}

bool Lattice::in_grid(GridPos p) const {
  const int n = grid_extent();
  return p.row >= 0 && p.row < n && p.col >= 0 && p.col < n;
}

bool Lattice::is_data_pos(GridPos p) const {
  return in_grid(p) && ((p.row + p.col) & 1) == 0;
}

bool Lattice::is_generator_pos(GridPos p) const {
  return in_grid(p) && ((p.row + p.col) & 1) == 1;
}

QubitId Lattice::qubit_at(GridPos p) const {
  if (!is_data_pos(p)) throw std::invalid_argument("not a data position");
  return static_cast<QubitId>(grid_qubit_[grid_index(p)]);
}

uint32_t Lattice::generator_at(GridPos p) const {
  auto g = try_generator_at(p);
  if (!g) throw std::invalid_argument("not a generator position");
  return *g;
}

std::optional<uint32_t> Lattice::try_generator_at(GridPos p) const {
  if (!is_generator_pos(p)) return std::nullopt;
  const int g = grid_gen_[grid_index(p)];
  if (g < 0) return std::nullopt;
  return static_cast<uint32_t>(g);
}

const std::vector<uint32_t>& Lattice::generators_on(QubitId q) const {
  return qubit_gens_.at(q);
}

PauliOp Lattice::connecting_chain(GridPos a, GridPos b, Axis axis) const {
  if (!is_generator_pos(a) || !is_generator_pos(b)) {
    throw std::invalid_argument("chain endpoints must be generator positions");
  }
  if (a == b) throw std::invalid_argument("chain endpoints coincide");
  if (((a.row ^ b.row) & 1) || ((a.col ^ b.col) & 1)) {
    throw std::invalid_argument("chain endpoints of different kinds");
  }
  PauliOp chain;
  GridPos cur = a;
  auto step_towards = [&](int GridPos::* coord, int target) {
    while (cur.*coord != target) {
      const int dir = target > cur.*coord ? 1 : -1;
      GridPos mid = cur;
      mid.*coord += dir;
      GridPos next = cur;
      next.*coord += 2 * dir;
      chain.set_factor(qubit_at(mid), axis);
      cur = next;
    }
  };
  step_towards(&GridPos::col, b.col);
  step_towards(&GridPos::row, b.row);
  return chain;
}

StringGraph StringGraph::build(const Lattice& lat, StringKind kind) {
  StringGraph g;
  g.kind_ = kind;
  const GenKind node_kind = kind == StringKind::ZString ? GenKind::Xs : GenKind::Zp;
  g.gen_node_.assign(lat.num_generators(), -1);
  for (uint32_t i = 0; i < lat.num_generators(); ++i) {
    if (lat.generator(i).kind == node_kind) {
      g.gen_node_[i] = static_cast<int>(g.node_gen_.size());
      g.node_gen_.push_back(i);
    }
  }
  g.num_real_ = static_cast<uint32_t>(g.node_gen_.size());
  g.adj_.resize(g.num_real_ + 2);

  const int hi = lat.grid_extent() - 1;
  for (QubitId q = 0; q < lat.num_qubits(); ++q) {
    std::vector<uint32_t> ends;
    for (uint32_t gi : lat.generators_on(q)) {
      if (lat.generator(gi).kind == node_kind) {
        ends.push_back(static_cast<uint32_t>(g.gen_node_[gi]));
      }
    }
    if (ends.size() == 2) {
      g.adj_[ends[0]].push_back({ends[1], q});
      g.adj_[ends[1]].push_back({ends[0], q});
    } else if (ends.size() == 1) {
      const GridPos p = lat.qubit_pos(q);
      uint32_t v;
      if (kind == StringKind::ZString) {
        v = p.row == 0 ? g.virtual_a() : g.virtual_b();
        if (p.row != 0 && p.row != hi) continue;  // interior dead end (none)
      } else {
        v = p.col == 0 ? g.virtual_a() : g.virtual_b();
        if (p.col != 0 && p.col != hi) continue;
      }
      g.adj_[ends[0]].push_back({v, q});
      g.adj_[v].push_back({ends[0], q});
    }
  }
  return g;
}

uint32_t StringGraph::node_of_generator(uint32_t gen_index) const {
  const int v = gen_node_.at(gen_index);
  if (v < 0) throw std::invalid_argument("generator not in this string graph");
  return static_cast<uint32_t>(v);
}

std::vector<int> StringGraph::distances(
    const std::vector<uint32_t>& sources) const {
  std::vector<int> dist(adj_.size(), -1);
  std::deque<uint32_t> queue;
  for (uint32_t s : sources) {
    if (dist[s] < 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const uint32_t u = queue.front();
    queue.pop_front();
    for (const Edge& e : adj_[u]) {
      if (dist[e.to] < 0) {
        dist[e.to] = dist[u] + 1;
        queue.push_back(e.to);
      }
    }
  }
  return dist;
}

std::vector<QubitId> StringGraph::shortest_path(uint32_t from,
                                                uint32_t to) const {
  std::vector<int> dist(adj_.size(), -1);
  std::vector<int> par_node(adj_.size(), -1);
  std::vector<QubitId> par_qubit(adj_.size(), 0);
  std::deque<uint32_t> queue;
  dist[from] = 0;
  queue.push_back(from);
  while (!queue.empty()) {
    const uint32_t u = queue.front();
    queue.pop_front();
    if (u == to) break;
    for (const Edge& e : adj_[u]) {
      if (dist[e.to] < 0) {
        dist[e.to] = dist[u] + 1;
        par_node[e.to] = static_cast<int>(u);
        par_qubit[e.to] = e.qubit;
        queue.push_back(e.to);
      }
    }
  }
  if (dist[to] < 0) throw std::runtime_error("string graph is disconnected");
  std::vector<QubitId> path;
  for (uint32_t v = to; v != from; v = static_cast<uint32_t>(par_node[v])) {
    path.push_back(par_qubit[v]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

int StringGraph::min_enclosing_loop(const Lattice& lat, const HoleRegion& hole,
                                    const HoleRegion& avoid) const {
  // Cut ray from inside the hole to the grid edge, picked so that it misses
  // the companion hole; loops in the wanted coset cross it an odd number of
  // times. The ray must exit through a boundary where this string species
  // cannot terminate, otherwise a short bigon hugging that boundary would
  // fake an odd crossing without enclosing the hole. Data qubits interior to
  // the hole are excluded so a loop cannot thread between the hole's own
  // generators (regions are rectangles).
  const GridPos a = hole.anchor;
  std::set<QubitId> cut;
  auto try_ray = [&](int dr, int dc) -> bool {
    std::set<QubitId> edges;
    GridPos p{a.row + dr, a.col + dc};
    while (lat.in_grid(p)) {
      if (avoid.contains(p)) return false;
      if (lat.is_data_pos(p)) edges.insert(lat.qubit_at(p));
      p = {p.row + dr, p.col + dc};
    }
    cut = std::move(edges);
    return true;
  };
  const bool ray_ok =
      kind_ == StringKind::ZString
          ? (try_ray(0, -1) || try_ray(0, 1))   // terminates top/bottom
          : (try_ray(-1, 0) || try_ray(1, 0));  // terminates left/right
  if (!ray_ok) {
    throw std::runtime_error("no cut ray clears the companion hole");
  }

  // Interior data qubits: shared by two generators inside the hole region.
  std::set<QubitId> blocked;
  for (QubitId q = 0; q < lat.num_qubits(); ++q) {
    int inside = 0;
    for (uint32_t gi : lat.generators_on(q)) {
      if (lat.generator(gi).pos.row % 2 == hole.anchor.row % 2 &&
          hole.contains(lat.generator(gi).pos)) {
        ++inside;
      }
    }
    if (inside >= 2) blocked.insert(q);
  }

  const auto num_nodes = static_cast<uint32_t>(adj_.size());
  int best = -1;
  // Variants: no virtual nodes, only virtual_a, only virtual_b. A loop may
  // lean on one boundary but a path joining the two boundaries is a
  // different homology class.
  for (int variant = 0; variant < 3; ++variant) {
    auto allowed = [&](uint32_t v) {
      if (v < num_real_) return true;
      if (variant == 1) return v == virtual_a();
      if (variant == 2) return v == virtual_b();
      return false;
    };
    // Sources: endpoints of cut edges (every odd loop holds one).
    std::vector<uint32_t> starts;
    for (uint32_t u = 0; u < num_nodes; ++u) {
      if (!allowed(u)) continue;
      for (const Edge& e : adj_[u]) {
        if (cut.count(e.qubit)) {
          starts.push_back(u);
          break;
        }
      }
    }
    for (uint32_t s : starts) {
      std::vector<int> dist(2 * num_nodes, -1);
      std::deque<uint32_t> queue;
      dist[2 * s] = 0;
      queue.push_back(2 * s);
      while (!queue.empty()) {
        const uint32_t cur = queue.front();
        queue.pop_front();
        const uint32_t u = cur / 2;
        const uint32_t sheet = cur % 2;
        for (const Edge& e : adj_[u]) {
          if (!allowed(e.to) || blocked.count(e.qubit)) continue;
          const uint32_t nsheet = sheet ^ (cut.count(e.qubit) ? 1u : 0u);
          const uint32_t nxt = 2 * e.to + nsheet;
          if (dist[nxt] < 0) {
            dist[nxt] = dist[cur] + 1;
            queue.push_back(nxt);
          }
        }
      }
      if (dist[2 * s + 1] >= 0 && (best < 0 || dist[2 * s + 1] < best)) {
        best = dist[2 * s + 1];
      }
    }
  }
  if (best < 0) throw std::runtime_error("no enclosing loop found");
  return best;
}

DefectQubit create_double_cut(const Lattice& lat, CutKind kind, GridPos pos1,
                              GridPos pos2) {
  const GenKind want = kind == CutKind::XCut ? GenKind::Xs : GenKind::Zp;
  for (GridPos p : {pos1, pos2}) {
    auto g = lat.try_generator_at(p);
    if (!g || lat.generator(*g).kind != want) {
      throw std::invalid_argument("cut position does not hold a matching generator");
    }
  }
  if (pos1 == pos2) throw std::invalid_argument("cut positions coincide");

  DefectQubit dq;
  dq.kind = kind;
  dq.holes[0] = HoleRegion{pos1, 1, 1};
  dq.holes[1] = HoleRegion{pos2, 1, 1};
  const GeneratorDef& g1 = lat.generator(lat.generator_at(pos1));
  if (kind == CutKind::XCut) {
    dq.logical_x = g1.pauli();  // sigma_x ring around the first hole
    dq.logical_z = lat.connecting_chain(pos1, pos2, Axis::Z);
    dq.init_label = "+";
  } else {
    dq.logical_z = g1.pauli();  // sigma_z ring around the first hole
    dq.logical_x = lat.connecting_chain(pos1, pos2, Axis::X);
    dq.init_label = "0";
  }
  dq.distance = logical_weights(lat, dq).min();
  return dq;
}

LogicalWeights logical_weights(const Lattice& lat, const DefectQubit& dq) {
  // Ring species: loops of the cut's own axis. Chain species: the other.
  const StringKind ring_kind =
      dq.kind == CutKind::XCut ? StringKind::XString : StringKind::ZString;
  const StringKind chain_kind =
      dq.kind == CutKind::XCut ? StringKind::ZString : StringKind::XString;

  const StringGraph ring_graph = StringGraph::build(lat, ring_kind);
  const StringGraph chain_graph = StringGraph::build(lat, chain_kind);

  LogicalWeights w{};
  w.ring = ring_graph.min_enclosing_loop(lat, dq.holes[0], dq.holes[1]);

  auto terminal_nodes = [&](const HoleRegion& hole) {
    std::vector<uint32_t> nodes;
    for (GridPos p : hole.positions()) {
      nodes.push_back(chain_graph.node_of_generator(lat.generator_at(p)));
    }
    return nodes;
  };
  const auto d1 = chain_graph.distances(terminal_nodes(dq.holes[0]));
  const auto d2 = chain_graph.distances(terminal_nodes(dq.holes[1]));
  int chain = -1;
  auto consider = [&](int v) {
    if (v >= 0 && (chain < 0 || v < chain)) chain = v;
  };
  {
    // direct: min over nodes of d1 + d2 along a shortest meeting point is
    // just d1 at any hole2 terminal; use the hole2 source set directly.
    int direct = -1;
    for (GridPos p : dq.holes[1].positions()) {
      const auto node = chain_graph.node_of_generator(lat.generator_at(p));
      if (d1[node] >= 0 && (direct < 0 || d1[node] < direct)) direct = d1[node];
    }
    consider(direct);
  }
  if (d1[chain_graph.virtual_a()] >= 0 && d2[chain_graph.virtual_a()] >= 0) {
    consider(d1[chain_graph.virtual_a()] + d2[chain_graph.virtual_a()]);
  }
  if (d1[chain_graph.virtual_b()] >= 0 && d2[chain_graph.virtual_b()] >= 0) {
    consider(d1[chain_graph.virtual_b()] + d2[chain_graph.virtual_b()]);
  }
  w.chain = chain;
  return w;
}

int min_logical_weight(const Lattice& lat, const DefectQubit& dq) {
  return logical_weights(lat, dq).min();
}

}  // namespace holosurf

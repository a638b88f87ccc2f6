#include "holosurf/deformation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace holosurf {

ValidityReport check_validity(const Tableau& tab, const PauliOp& q) {
  ValidityReport r;
  r.odd_count = tab.anticommute_count(q);
  r.valid = (r.odd_count % 2) == 1;
  return r;
}

bool check_parallel(const Tableau& tab, const std::vector<PauliOp>& qs) {
  for (std::size_t i = 0; i < qs.size(); ++i) {
    for (std::size_t j = i + 1; j < qs.size(); ++j) {
      if (!qs[i].commutes_with(qs[j])) return false;
    }
  }
  std::vector<std::vector<uint32_t>> sets(qs.size());
  const auto& rows = tab.rows();
  for (std::size_t i = 0; i < qs.size(); ++i) {
    for (uint32_t r = 0; r < rows.size(); ++r) {
      if (rows[r].active && !rows[r].op.commutes_with(qs[i])) {
        sets[i].push_back(r);
      }
    }
    if (sets[i].size() % 2 == 0) return false;
  }
  for (std::size_t i = 0; i < qs.size(); ++i) {
    for (std::size_t j = i + 1; j < qs.size(); ++j) {
      for (uint32_t r : sets[i]) {
        if (std::find(sets[j].begin(), sets[j].end(), r) != sets[j].end()) {
          return false;
        }
      }
    }
  }
  return true;
}

GridPos direction_delta(Direction d) {
  switch (d) {
    case Direction::Up: return {-2, 0};
    case Direction::Down: return {2, 0};
    case Direction::Left: return {0, -2};
    case Direction::Right: return {0, 2};
  }
  throw std::logic_error("bad direction");
}

bool BraidPath::closed() const {
  int dr = 0, dc = 0;
  for (const auto& leg : legs) {
    const GridPos d = direction_delta(leg.dir);
    dr += d.row * leg.units;
    dc += d.col * leg.units;
  }
  return dr == 0 && dc == 0;
}

DeformationContext::DeformationContext(const Lattice& lat, Tableau& tab)
    : lat_(&lat), tab_(&tab) {}

Axis DeformationContext::term_axis(CutKind kind) const {
  return kind == CutKind::ZCut ? Axis::X : Axis::Z;
}

GenKind DeformationContext::gen_kind(CutKind kind) const {
  return kind == CutKind::ZCut ? GenKind::Zp : GenKind::Xs;
}

QubitId DeformationContext::edge_between(GridPos a, GridPos b) const {
  const GridPos mid{(a.row + b.row) / 2, (a.col + b.col) / 2};
  return lat_->qubit_at(mid);
}

std::size_t DeformationContext::create_defect(CutKind kind, GridPos pos1,
                                              GridPos pos2) {
  DefectQubit dq = create_double_cut(*lat_, kind, pos1, pos2);
  DeformationStep step;
  step.toggles.push_back(
      ToggleSpec{lat_->generator(lat_->generator_at(pos1)).pauli(), false, {}});
  step.toggles.push_back(
      ToggleSpec{lat_->generator(lat_->generator_at(pos2)).pauli(), false, {}});
  tab_->execute(step);

  TrackedDefect td;
  td.kind = kind;
  td.holes[0] = HoleState{dq.holes[0], {}};
  td.holes[1] = HoleState{dq.holes[1], {}};
  td.init_label = dq.init_label;
  td.logical_index = tab_->register_logical(
      dq.logical_x, dq.logical_z, "defect" + std::to_string(defects_.size()));
  defects_.push_back(std::move(td));
  return defects_.size() - 1;
}

void DeformationContext::annihilate_defect(std::size_t i) {
  TrackedDefect& td = defects_.at(i);
  for (const auto& hs : td.holes) {
    if (hs.region.width != 1 || hs.region.height != 1) {
      throw std::invalid_argument("annihilate requires minimal holes");
    }
  }
  tab_->remove_logical(td.logical_index);
  for (auto& other : defects_) {
    if (other.logical_index > td.logical_index) --other.logical_index;
  }
  for (const auto& hs : td.holes) {
    const PauliOp gen =
        lat_->generator(lat_->generator_at(hs.region.anchor)).pauli();
    tab_->toggle_on(ToggleSpec{gen, true, {}});
  }
  defects_.erase(defects_.begin() + static_cast<long>(i));
}

DefectQubit DeformationContext::defect_snapshot(std::size_t i) const {
  const TrackedDefect& td = defects_.at(i);
  DefectQubit dq;
  dq.kind = td.kind;
  dq.holes = {td.holes[0].region, td.holes[1].region};
  const LogicalPair& lp = tab_->logicals().at(td.logical_index);
  dq.logical_x = lp.x;
  dq.logical_z = lp.z;
  dq.init_label = td.init_label;
  dq.distance = logical_weights(*lat_, dq).min();
  return dq;
}

std::set<QubitId> DeformationContext::comb_tree(const HoleRegion& region,
                                                Direction dir) const {
  // All inter-line edges along the movement axis plus the intra edges of the
  // trailing line. Total (wh - 1) edges: a spanning tree of the region.
  std::set<QubitId> tree;
  const bool horizontal = dir == Direction::Left || dir == Direction::Right;
  const int nr = region.height, nc = region.width;
  auto pos = [&](int i, int j) {
    return GridPos{region.anchor.row + 2 * i, region.anchor.col + 2 * j};
  };
  if (horizontal) {
    for (int i = 0; i < nr; ++i) {
      for (int j = 0; j + 1 < nc; ++j) {
        tree.insert(edge_between(pos(i, j), pos(i, j + 1)));
      }
    }
    const int jt = dir == Direction::Right ? 0 : nc - 1;  // trailing column
    for (int i = 0; i + 1 < nr; ++i) {
      tree.insert(edge_between(pos(i, jt), pos(i + 1, jt)));
    }
  } else {
    for (int j = 0; j < nc; ++j) {
      for (int i = 0; i + 1 < nr; ++i) {
        tree.insert(edge_between(pos(i, j), pos(i + 1, j)));
      }
    }
    const int it = dir == Direction::Down ? 0 : nr - 1;  // trailing row
    for (int j = 0; j + 1 < nc; ++j) {
      tree.insert(edge_between(pos(it, j), pos(it, j + 1)));
    }
  }
  return tree;
}

std::vector<ToggleSpec> DeformationContext::retree(
    const HoleState& hole, const std::set<QubitId>& target, GenKind kind,
    Axis ax) const {
  std::vector<ToggleSpec> toggles;
  // The same-kind generator pair flanking a tree qubit, from grid parity:
  // a (even,even) qubit joins Z_p's horizontally and X_s's vertically; an
  // (odd,odd) qubit the other way around.
  auto flanking = [&](QubitId q) -> std::pair<GridPos, GridPos> {
    const GridPos p = lat_->qubit_pos(q);
    const bool even_even = p.row % 2 == 0;
    const bool row_pair = (kind == GenKind::Zp) == even_even;
    if (row_pair) {
      return {GridPos{p.row, p.col - 1}, GridPos{p.row, p.col + 1}};
    }
    return {GridPos{p.row - 1, p.col}, GridPos{p.row + 1, p.col}};
  };
  std::set<QubitId> cur = hole.tree;
  while (cur != target) {
    QubitId e_new = 0;
    bool found = false;
    for (QubitId q : target) {
      if (!cur.count(q)) {
        e_new = q;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("retree: tree larger than target");
    // Cycle: path between e_new's flanking generators through the current
    // tree; swap out the first path edge not wanted by the target.
    auto [u, v] = flanking(e_new);
    std::map<GridPos, std::vector<std::pair<GridPos, QubitId>>> adj;
    for (QubitId q : cur) {
      auto [a, b] = flanking(q);
      adj[a].push_back({b, q});
      adj[b].push_back({a, q});
    }
    std::map<GridPos, std::pair<GridPos, QubitId>> parent;
    std::deque<GridPos> queue{u};
    std::set<GridPos> seen{u};
    while (!queue.empty()) {
      const GridPos cur_pos = queue.front();
      queue.pop_front();
      if (cur_pos == v) break;
      for (const auto& [next, q] : adj[cur_pos]) {
        if (!seen.count(next)) {
          seen.insert(next);
          parent[next] = {cur_pos, q};
          queue.push_back(next);
        }
      }
    }
    if (!seen.count(v)) throw std::logic_error("retree: cycle not found");
    QubitId e_old = 0;
    bool have_old = false;
    for (GridPos p = v; p != u;) {
      const auto& [prev, q] = parent.at(p);
      if (!target.count(q)) {
        e_old = q;
        have_old = true;
        break;
      }
      p = prev;
    }
    if (!have_old) throw std::logic_error("retree: no removable edge on cycle");
    toggles.push_back(ToggleSpec{PauliOp::single(e_new, ax), true, {}});
    toggles.push_back(ToggleSpec{PauliOp::single(e_old, ax), false, {}});
    cur.insert(e_new);
    cur.erase(e_old);
  }
  return toggles;
}

void DeformationContext::ensure_clear(std::size_t defect, int hole,
                                      const HoleRegion& next) const {
  const GenKind want = gen_kind(defects_[defect].kind);
  for (GridPos p : next.positions()) {
    auto g = lat_->try_generator_at(p);
    if (!g || lat_->generator(*g).kind != want) {
      throw std::runtime_error("hole collides with the lattice boundary");
    }
  }
  // Inflated bounding boxes must stay disjoint (one data-edge clearance).
  auto box = [&](const HoleRegion& r) {
    return std::array<int, 4>{r.anchor.row - 1,
                              r.anchor.row + 2 * (r.height - 1) + 1,
                              r.anchor.col - 1,
                              r.anchor.col + 2 * (r.width - 1) + 1};
  };
  const auto nb = box(next);
  for (std::size_t d = 0; d < defects_.size(); ++d) {
    for (int h = 0; h < 2; ++h) {
      if (d == defect && h == hole) continue;
      const auto ob = box(defects_[d].holes[h].region);
      const bool disjoint =
          nb[1] < ob[0] || ob[1] < nb[0] || nb[3] < ob[2] || ob[3] < nb[2];
      if (!disjoint) {
        throw std::runtime_error("hole collides with another defect hole");
      }
    }
  }
}

void DeformationContext::execute_step(DeformationStep step,
                                      std::vector<DeformationStep>& out) {
  for (const auto& q : step.rotations) {
    if (q.weight() > 4) {
      throw std::logic_error("rotation generator weight exceeds 4");
    }
  }
  // The parallelism conditions are judged against the Hamiltonian the
  // rotations actually deform, i.e. after the step's toggles.
  tab_->apply_toggles(step.toggles);
  if (!step.rotations.empty() && !check_parallel(*tab_, step.rotations)) {
    throw std::logic_error("deformation step fails the parallelism conditions");
  }
  tab_->commit_rotations(step);
  out.push_back(std::move(step));
}

std::vector<DeformationStep> DeformationContext::grow_rect(std::size_t defect,
                                                           int hole, int width,
                                                           int height) {
  TrackedDefect& td = defects_.at(defect);
  HoleState& hs = td.holes.at(static_cast<std::size_t>(hole));
  if (width < hs.region.width || height < hs.region.height) {
    throw std::invalid_argument("grow_rect cannot shrink a hole");
  }
  const Axis ax = term_axis(td.kind);
  std::vector<DeformationStep> out;

  while (hs.region.height < height) {
    HoleRegion next = hs.region;
    next.height += 1;
    ensure_clear(defect, hole, next);
    DeformationStep step;
    const int new_row = hs.region.anchor.row + 2 * hs.region.height;
    for (int j = 0; j < hs.region.width; ++j) {
      const GridPos p{new_row, hs.region.anchor.col + 2 * j};
      const GridPos above{new_row - 2, p.col};
      const QubitId pivot = edge_between(p, above);
      step.rotations.push_back(rotation_mapping(
          lat_->generator(lat_->generator_at(p)).pauli(),
          PauliOp::single(pivot, ax)));
      hs.tree.insert(pivot);
    }
    execute_step(std::move(step), out);
    hs.region = next;
  }
  while (hs.region.width < width) {
    HoleRegion next = hs.region;
    next.width += 1;
    ensure_clear(defect, hole, next);
    DeformationStep step;
    const int new_col = hs.region.anchor.col + 2 * hs.region.width;
    for (int i = 0; i < hs.region.height; ++i) {
      const GridPos p{hs.region.anchor.row + 2 * i, new_col};
      const GridPos left{p.row, new_col - 2};
      const QubitId pivot = edge_between(p, left);
      step.rotations.push_back(rotation_mapping(
          lat_->generator(lat_->generator_at(p)).pauli(),
          PauliOp::single(pivot, ax)));
      hs.tree.insert(pivot);
    }
    execute_step(std::move(step), out);
    hs.region = next;
  }
  return out;
}

std::vector<DeformationStep> DeformationContext::shrink_rect(std::size_t defect,
                                                             int hole,
                                                             int width,
                                                             int height) {
  TrackedDefect& td = defects_.at(defect);
  HoleState& hs = td.holes.at(static_cast<std::size_t>(hole));
  if (width > hs.region.width || height > hs.region.height) {
    throw std::invalid_argument("shrink_rect cannot grow a hole");
  }
  if (width < 1 || height < 1) {
    throw std::invalid_argument("a hole keeps at least one generator");
  }
  const Axis ax = term_axis(td.kind);
  std::vector<DeformationStep> out;

  // contract columns from the right: each vacated plaquette pivots on its
  // rung toward the surviving part of the hole
  while (hs.region.width > width) {
    const int col = hs.region.anchor.col + 2 * (hs.region.width - 1);
    // the vacated column's own spines must carry no terms: normalize to the
    // rightward comb (spines on the leftmost column) first
    {
      auto toggles =
          retree(hs, comb_tree(hs.region, Direction::Right), gen_kind(td.kind), ax);
      if (!toggles.empty()) {
        DeformationStep step;
        step.toggles = std::move(toggles);
        execute_step(std::move(step), out);
        hs.tree = comb_tree(hs.region, Direction::Right);
      }
    }
    DeformationStep step;
    for (int i = 0; i < hs.region.height; ++i) {
      const GridPos p{hs.region.anchor.row + 2 * i, col};
      const GridPos left{p.row, col - 2};
      const QubitId pivot = edge_between(p, left);
      step.rotations.push_back(rotation_mapping(
          PauliOp::single(pivot, ax),
          lat_->generator(lat_->generator_at(p)).pauli()));
      hs.tree.erase(pivot);
    }
    execute_step(std::move(step), out);
    hs.region.width -= 1;
  }
  // contract the strip from the bottom
  while (hs.region.height > height) {
    const int row = hs.region.anchor.row + 2 * (hs.region.height - 1);
    {
      auto toggles =
          retree(hs, comb_tree(hs.region, Direction::Down), gen_kind(td.kind), ax);
      if (!toggles.empty()) {
        DeformationStep step;
        step.toggles = std::move(toggles);
        execute_step(std::move(step), out);
        hs.tree = comb_tree(hs.region, Direction::Down);
      }
    }
    DeformationStep step;
    for (int j = 0; j < hs.region.width; ++j) {
      const GridPos p{row, hs.region.anchor.col + 2 * j};
      const GridPos above{row - 2, p.col};
      const QubitId pivot = edge_between(p, above);
      step.rotations.push_back(rotation_mapping(
          PauliOp::single(pivot, ax),
          lat_->generator(lat_->generator_at(p)).pauli()));
      hs.tree.erase(pivot);
    }
    execute_step(std::move(step), out);
    hs.region.height -= 1;
  }
  return out;
}

std::vector<DeformationStep> DeformationContext::shrink_hole(
    std::size_t defect, int hole, int target_perimeter) {
  if (target_perimeter % 4 != 0) {
    throw std::invalid_argument("target perimeter must be a multiple of 4");
  }
  const int s = target_perimeter / 4;
  return shrink_rect(defect, hole, s, s);
}

std::vector<DeformationStep> DeformationContext::enlarge_hole(
    std::size_t defect, int hole, int target_perimeter) {
  if (target_perimeter % 4 != 0) {
    throw std::invalid_argument("target perimeter must be a multiple of 4");
  }
  const HoleState& hs = defects_.at(defect).holes.at(static_cast<std::size_t>(hole));
  if (hs.region.width != hs.region.height) {
    throw std::invalid_argument("enlarge_hole expects a square hole");
  }
  const int s = target_perimeter / 4;
  if (s < hs.region.width) {
    throw std::invalid_argument("target perimeter smaller than current hole");
  }
  return grow_rect(defect, hole, s, s);
}

std::vector<DeformationStep> DeformationContext::unit_move(std::size_t defect,
                                                           int hole,
                                                           Direction dir,
                                                           bool two_phase) {
  TrackedDefect& td = defects_.at(defect);
  HoleState& hs = td.holes.at(static_cast<std::size_t>(hole));
  const Axis ax = term_axis(td.kind);
  const GridPos delta = direction_delta(dir);
  const bool horizontal = dir == Direction::Left || dir == Direction::Right;
  const int extent_along = horizontal ? hs.region.width : hs.region.height;
  if (extent_along < 2) two_phase = true;

  std::vector<DeformationStep> out;

  // Normalize the interior-term tree for this movement direction.
  {
    auto toggles = retree(hs, comb_tree(hs.region, dir), gen_kind(td.kind), ax);
    if (!toggles.empty()) {
      DeformationStep step;
      step.toggles = std::move(toggles);
      execute_step(std::move(step), out);
      hs.tree = comb_tree(hs.region, dir);
    }
  }

  HoleRegion shifted = hs.region;
  shifted.anchor.row += delta.row;
  shifted.anchor.col += delta.col;
  {
    HoleRegion swept = hs.region;  // union of current and shifted
    swept.anchor.row = std::min(hs.region.anchor.row, shifted.anchor.row);
    swept.anchor.col = std::min(hs.region.anchor.col, shifted.anchor.col);
    swept.width += horizontal ? 1 : 0;
    swept.height += horizontal ? 0 : 1;
    ensure_clear(defect, hole, swept);
  }

  const int perp = horizontal ? hs.region.height : hs.region.width;
  auto line_pos = [&](GridPos base, int i) {
    return horizontal ? GridPos{base.row + 2 * i, base.col}
                      : GridPos{base.row, base.col + 2 * i};
  };
  // Leading new line, trailing line, and the line after the trailing one.
  GridPos lead_base, trail_base, second_base;
  if (dir == Direction::Right || dir == Direction::Down) {
    lead_base = line_pos(hs.region.anchor, 0);
    lead_base.row += horizontal ? 0 : 2 * hs.region.height;
    lead_base.col += horizontal ? 2 * hs.region.width : 0;
    trail_base = hs.region.anchor;
  } else {
    lead_base = hs.region.anchor;
    lead_base.row += horizontal ? 0 : -2;
    lead_base.col += horizontal ? -2 : 0;
    trail_base = hs.region.anchor;
    trail_base.row += horizontal ? 0 : 2 * (hs.region.height - 1);
    trail_base.col += horizontal ? 2 * (hs.region.width - 1) : 0;
  }
  second_base = GridPos{trail_base.row + delta.row, trail_base.col + delta.col};

  auto expansion_rotations = [&]() {
    std::vector<PauliOp> rots;
    for (int i = 0; i < perp; ++i) {
      const GridPos p = line_pos(lead_base, i);
      const GridPos inside{p.row - delta.row, p.col - delta.col};
      rots.push_back(rotation_mapping(
          lat_->generator(lat_->generator_at(p)).pauli(),
          PauliOp::single(edge_between(p, inside), ax)));
    }
    return rots;
  };
  auto contraction_rotations = [&]() {
    std::vector<PauliOp> rots;
    for (int i = 0; i < perp; ++i) {
      const GridPos p = line_pos(trail_base, i);
      const GridPos second = line_pos(second_base, i);
      rots.push_back(rotation_mapping(
          PauliOp::single(edge_between(p, second), ax),
          lat_->generator(lat_->generator_at(p)).pauli()));
    }
    return rots;
  };
  auto swap_toggles = [&]() {
    std::vector<ToggleSpec> toggles;
    for (int i = 0; i + 1 < perp; ++i) {
      toggles.push_back(ToggleSpec{
          PauliOp::single(
              edge_between(line_pos(second_base, i), line_pos(second_base, i + 1)),
              ax),
          true,
          {}});
    }
    for (int i = 0; i + 1 < perp; ++i) {
      toggles.push_back(ToggleSpec{
          PauliOp::single(
              edge_between(line_pos(trail_base, i), line_pos(trail_base, i + 1)),
              ax),
          false,
          {}});
    }
    return toggles;
  };

  if (!two_phase) {
    DeformationStep step;
    step.toggles = swap_toggles();
    auto rots = expansion_rotations();
    auto cons = contraction_rotations();
    step.rotations.insert(step.rotations.end(), rots.begin(), rots.end());
    step.rotations.insert(step.rotations.end(), cons.begin(), cons.end());
    execute_step(std::move(step), out);
  } else {
    DeformationStep expand;
    expand.rotations = expansion_rotations();
    execute_step(std::move(expand), out);
    DeformationStep contract;
    contract.toggles = swap_toggles();
    contract.rotations = contraction_rotations();
    execute_step(std::move(contract), out);
  }
  hs.region = shifted;
  hs.tree = comb_tree(hs.region, dir);
  return out;
}

std::vector<DeformationStep> DeformationContext::move_hole(std::size_t defect,
                                                           int hole,
                                                           Direction dir,
                                                           int units,
                                                           bool two_phase) {
  std::vector<DeformationStep> out;
  for (int u = 0; u < units; ++u) {
    auto steps = unit_move(defect, hole, dir, two_phase);
    out.insert(out.end(), std::make_move_iterator(steps.begin()),
               std::make_move_iterator(steps.end()));
  }
  return out;
}

BraidReport DeformationContext::mapping_report(std::size_t control,
                                               std::size_t target,
                                               const LogicalPair& c0,
                                               const LogicalPair& t0) const {
  const LogicalPair& cn =
      tab_->logicals().at(defects_.at(control).logical_index);
  const LogicalPair& tn = tab_->logicals().at(defects_.at(target).logical_index);
  BraidReport rep;
  rep.x_control = tab_->equivalent_mod_stabilizer(cn.x, c0.x * t0.x);
  rep.x_target = tab_->equivalent_mod_stabilizer(tn.x, t0.x);
  rep.z_control = tab_->equivalent_mod_stabilizer(cn.z, c0.z);
  rep.z_target = tab_->equivalent_mod_stabilizer(tn.z, c0.z * t0.z);
  return rep;
}

DeformationContext::BraidResult DeformationContext::braid(std::size_t control,
                                                          std::size_t target) {
  const TrackedDefect& tc = defects_.at(control);
  const TrackedDefect& tt = defects_.at(target);
  if (tc.kind != CutKind::ZCut || tt.kind != CutKind::XCut) {
    throw std::invalid_argument("braid expects a Z-cut control and X-cut target");
  }
  const HoleRegion mov = tc.holes[0].region;
  const HoleRegion tgt = tt.holes[0].region;
  const int mov_max_row = mov.anchor.row + 2 * (mov.height - 1);
  const int mov_max_col = mov.anchor.col + 2 * (mov.width - 1);
  const int tgt_max_row = tgt.anchor.row + 2 * (tgt.height - 1);
  const int tgt_max_col = tgt.anchor.col + 2 * (tgt.width - 1);
  if (mov_max_row > tgt.anchor.row - 4 || mov_max_col > tgt.anchor.col - 4) {
    throw std::runtime_error("braid clearance failure: control must start above-left of the target");
  }
  const int right_units = (tgt_max_col + 4 - mov.anchor.col) / 2;
  const int down_units = (tgt_max_row + 4 - mov.anchor.row) / 2;
  BraidPath path;
  path.legs = {{Direction::Right, right_units},
               {Direction::Down, down_units},
               {Direction::Left, right_units},
               {Direction::Up, down_units}};
  return braid_loop(control, target, path);
}

DeformationContext::BraidResult DeformationContext::braid_loop(
    std::size_t defect, std::size_t other, const BraidPath& path) {
  if (!path.closed()) throw std::invalid_argument("braid path must be closed");
  const LogicalPair c0 = tab_->logicals().at(defects_.at(defect).logical_index);
  const LogicalPair t0 = tab_->logicals().at(defects_.at(other).logical_index);
  BraidResult res;
  res.path = path;
  for (const auto& leg : path.legs) {
    auto steps = move_hole(defect, 0, leg.dir, leg.units);
    res.steps.insert(res.steps.end(), std::make_move_iterator(steps.begin()),
                     std::make_move_iterator(steps.end()));
  }
  res.report = mapping_report(defect, other, c0, t0);
  return res;
}

}  // namespace holosurf

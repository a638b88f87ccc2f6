#include <doctest.h>

#include <algorithm>
#include <memory>

#include "holosurf/deformation.hpp"
#include "holosurf/lattice.hpp"
#include "holosurf/tableau.hpp"

using namespace holosurf;

namespace {

std::vector<std::pair<std::string, int>> canonical_rows(const Tableau& tab) {
  std::vector<std::pair<std::string, int>> rows;
  for (const auto& r : tab.rows()) {
    if (r.active) rows.push_back({r.op.str(), r.sign});
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

PauliOp zp(const Lattice& lat, GridPos p) {
  return lat.generator(lat.generator_at(p)).pauli();
}

}  // namespace

// Canonical hole-enlargement geometry, pinned once for the golden tests.
//
//        col:   6    7    8    9   10
//  row 5               (5,9)
//  row 6        [P1]  q4=(6,8)  [P4] (6,10)
//  row 7       q1=(7,7)        q3=(7,9)
//  row 8  (8,6) [P2]  q2=(8,8)  [P3] (8,10)
//  row 9        (9,7)          (9,9)
//
// P1 = (6,7) is the hole; the sequence absorbs P2 below it, then the column
// {P4, P3} to the right in one parallel step.
TEST_CASE("hole enlargement golden sequence") {
  const Lattice lat = Lattice::build(8);
  Tableau tab = Tableau::from_lattice(lat);
  DeformationContext ctx(lat, tab);

  const GridPos P1{6, 7}, P2{8, 7}, P3{8, 9}, P4{6, 9};
  const QubitId q1 = lat.qubit_at({7, 7});
  const QubitId q2 = lat.qubit_at({8, 8});
  const QubitId q4 = lat.qubit_at({6, 8});

  const std::size_t d = ctx.create_defect(CutKind::ZCut, P1, GridPos{6, 3});
  const PauliOp chain_x = tab.logicals()[0].x;
  CHECK(chain_x == lat.connecting_chain(P1, GridPos{6, 3}, Axis::X));
  CHECK(tab.logicals()[0].z == zp(lat, P1));

  // snapshot of untouched rows
  const auto slot = [&](GridPos p) { return lat.generator_at(p); };
  std::vector<std::pair<std::string, int>> before;
  for (uint32_t i = 0; i < tab.rows().size(); ++i) {
    before.push_back({tab.row(i).op.str(), tab.row(i).sign});
  }

  // Sequential three-rotation reproduction of the enlargement table.
  Tableau seq = tab;
  const PauliOp g1 = rotation_mapping(zp(lat, P2), PauliOp::single(q1, Axis::X));
  const PauliOp g2 = rotation_mapping(zp(lat, P3), PauliOp::single(q2, Axis::X));
  const PauliOp g3 = rotation_mapping(zp(lat, P4), PauliOp::single(q4, Axis::X));

  // column t1
  CHECK(check_validity(seq, g1).odd_count == 1);
  seq.apply_rotation(g1);
  CHECK(seq.row(slot(P2)).op == PauliOp::single(q1, Axis::X));
  CHECK(seq.row(slot(P2)).sign == +1);
  CHECK(seq.row(slot(P3)).op == zp(lat, P3));
  CHECK(seq.row(slot(P4)).op == zp(lat, P4));
  CHECK(seq.reduce_mod_stabilizer(seq.logicals()[0].z).rep ==
        zp(lat, P1) * zp(lat, P2));
  CHECK(seq.logicals()[0].x == chain_x);

  // column t2
  CHECK(check_validity(seq, g2).odd_count == 1);
  seq.apply_rotation(g2);
  CHECK(seq.row(slot(P3)).op == PauliOp::single(q2, Axis::X));
  CHECK(seq.row(slot(P3)).sign == +1);
  CHECK(seq.reduce_mod_stabilizer(seq.logicals()[0].z).rep ==
        zp(lat, P1) * zp(lat, P2) * zp(lat, P3));
  CHECK(seq.logicals()[0].x == chain_x);

  // column t3
  CHECK(check_validity(seq, g3).odd_count == 1);
  seq.apply_rotation(g3);
  CHECK(seq.row(slot(P4)).op == PauliOp::single(q4, Axis::X));
  CHECK(seq.row(slot(P4)).sign == +1);
  CHECK(seq.reduce_mod_stabilizer(seq.logicals()[0].z).rep ==
        zp(lat, P1) * zp(lat, P2) * zp(lat, P3) * zp(lat, P4));
  CHECK(seq.logicals()[0].x == chain_x);
  CHECK_NOTHROW(seq.check_invariants(4));

  // all untouched rows are bit-identical
  for (uint32_t i = 0; i < seq.rows().size(); ++i) {
    if (i == slot(P2) || i == slot(P3) || i == slot(P4)) continue;
    CHECK(seq.row(i).op.str() == before[i].first);
    CHECK(seq.row(i).sign == before[i].second);
  }

  // The canonical schedule: one vertical step, then the parallel column.
  const auto steps = ctx.enlarge_hole(d, 0, 8);
  REQUIRE(steps.size() == 2);
  CHECK(steps[0].rotations.size() == 1);
  CHECK(steps[0].rotations[0] == g1);
  REQUIRE(steps[1].rotations.size() == 2);
  CHECK(steps[1].rotations[0] == g3);  // parallel pair, order immaterial
  CHECK(steps[1].rotations[1] == g2);
  CHECK(canonical_rows(tab) == canonical_rows(seq));
  CHECK(tab.logicals()[0].x == seq.logicals()[0].x);
  CHECK(tab.logicals()[0].z == seq.logicals()[0].z);

  const DefectQubit snap = ctx.defect_snapshot(d);
  CHECK(logical_weights(lat, snap).ring == 8);
}

TEST_CASE("enlargement step counts and errors") {
  const Lattice lat = Lattice::build(12);
  Tableau tab = Tableau::from_lattice(lat);
  DeformationContext ctx(lat, tab);
  const std::size_t d = ctx.create_defect(CutKind::ZCut, {10, 11}, {10, 3});

  CHECK(ctx.enlarge_hole(d, 0, 4).empty());  // already at perimeter 4
  CHECK_THROWS_AS(ctx.enlarge_hole(d, 0, 10), std::invalid_argument);
  const auto steps = ctx.enlarge_hole(d, 0, 12);  // 3x3: 2 vertical + 2 column
  CHECK(steps.size() == 4);
  CHECK(steps[0].rotations.size() == 1);
  CHECK(steps[1].rotations.size() == 1);
  CHECK(steps[2].rotations.size() == 3);
  CHECK(steps[3].rotations.size() == 3);
  CHECK(logical_weights(lat, ctx.defect_snapshot(d)).ring == 12);
  CHECK_NOTHROW(tab.check_invariants(4));

  // growing into the boundary is rejected
  const std::size_t d2 = ctx.create_defect(CutKind::ZCut, {20, 17}, {20, 21});
  CHECK_THROWS_AS(ctx.enlarge_hole(d2, 0, 16), std::runtime_error);
}

TEST_CASE("creation followed by annihilation restores the generator set") {
  const Lattice lat = Lattice::build(6);
  Tableau tab = Tableau::from_lattice(lat);
  const auto before = canonical_rows(tab);
  DeformationContext ctx(lat, tab);
  const std::size_t d = ctx.create_defect(CutKind::XCut, {5, 4}, {5, 8});
  CHECK(tab.num_active() == lat.num_generators() - 2);
  CHECK(tab.logicals().size() == 1);
  ctx.annihilate_defect(d);
  CHECK(canonical_rows(tab) == before);
  CHECK(tab.logicals().empty());

  CHECK_THROWS_AS(ctx.create_defect(CutKind::XCut, {5, 4}, {5, 4}),
                  std::invalid_argument);
}

// Hole-movement geometry, pinned once: a 2x4 hole (columns 7 and 9, rows
// 8..14), interior sigma_x on the shared rungs and the trailing spines.
TEST_CASE("movement validity counts and the boundary-term swap") {
  const Lattice lat = Lattice::build(12);
  Tableau tab = Tableau::from_lattice(lat);
  DeformationContext ctx(lat, tab);
  const std::size_t d = ctx.create_defect(CutKind::ZCut, {8, 7}, {8, 3});
  ctx.grow_rect(d, 0, 2, 4);
  CHECK_NOTHROW(tab.check_invariants(4));

  // contraction generator for the top-left plaquette, before the swap
  const PauliOp q_contract = rotation_mapping(
      PauliOp::single(lat.qubit_at({8, 8}), Axis::X), zp(lat, {8, 7}));
  const auto before_swap = check_validity(tab, q_contract);
  CHECK(before_swap.odd_count == 2);
  CHECK_FALSE(before_swap.valid);

  // swap: bring up the second column's spines, retire the trailing ones
  DeformationStep swap;
  for (int r : {9, 11, 13}) {
    swap.toggles.push_back(
        ToggleSpec{PauliOp::single(lat.qubit_at({r, 9}), Axis::X), true, {}});
  }
  for (int r : {9, 11, 13}) {
    swap.toggles.push_back(
        ToggleSpec{PauliOp::single(lat.qubit_at({r, 7}), Axis::X), false, {}});
  }
  tab.execute(swap);
  for (int r : {9, 11, 13}) {
    const auto row = tab.find_row(PauliOp::single(lat.qubit_at({r, 9}), Axis::X));
    REQUIRE(row.has_value());
    CHECK(tab.row(*row).sign == +1);  // state-preserving toggle
  }

  const auto after_swap = check_validity(tab, q_contract);
  CHECK(after_swap.odd_count == 1);
  CHECK(after_swap.valid);

  // the four simultaneous expansion rotations satisfy the parallel conditions
  std::vector<PauliOp> expansions;
  for (int r : {8, 10, 12, 14}) {
    expansions.push_back(rotation_mapping(
        zp(lat, {r, 11}), PauliOp::single(lat.qubit_at({r, 10}), Axis::X)));
  }
  CHECK(check_parallel(tab, expansions));
  CHECK_FALSE(check_parallel(tab, {expansions[0], expansions[0]}));
}

TEST_CASE("one unit of rightward movement lands the expected frame") {
  const Lattice lat = Lattice::build(12);
  Tableau tab = Tableau::from_lattice(lat);
  DeformationContext ctx(lat, tab);
  const std::size_t d = ctx.create_defect(CutKind::ZCut, {8, 7}, {8, 3});
  ctx.grow_rect(d, 0, 2, 4);
  const auto group_before = tab.canonical_group_rows();
  const LogicalPair logicals_before = tab.logicals()[0];

  CHECK(ctx.move_hole(d, 0, Direction::Right, 0).empty());
  const auto steps = ctx.move_hole(d, 0, Direction::Right, 1);
  REQUIRE(steps.size() == 1);  // combined expand+contract step
  CHECK(steps[0].toggles.size() == 6);
  CHECK(steps[0].rotations.size() == 8);
  CHECK_NOTHROW(tab.check_invariants(4));

  // vacated column is fully re-stabilized with known +1 signs
  for (int r : {8, 10, 12, 14}) {
    const auto row = tab.find_row(zp(lat, {r, 7}));
    REQUIRE(row.has_value());
    CHECK(tab.row(*row).active);
    CHECK(tab.row(*row).sign == +1);
  }
  // new interior terms: rungs into the absorbed column plus second-column
  // spines
  for (int r : {8, 10, 12, 14}) {
    const auto row = tab.find_row(PauliOp::single(lat.qubit_at({r, 10}), Axis::X));
    REQUIRE(row.has_value());
    CHECK(tab.row(*row).active);
  }
  for (int r : {9, 11, 13}) {
    const auto row = tab.find_row(PauliOp::single(lat.qubit_at({r, 9}), Axis::X));
    REQUIRE(row.has_value());
    CHECK(tab.row(*row).active);
  }

  // ring logical follows the hole
  PauliOp ring_rep;
  {
    PauliOp prod;
    for (int r : {8, 10, 12, 14}) {
      for (int c : {9, 11}) prod = prod * zp(lat, {r, c});
    }
    ring_rep = prod;
  }
  CHECK(tab.equivalent_mod_stabilizer(tab.logicals()[0].z, ring_rep));
  // chain logical still reaches the companion hole
  CHECK(tab.equivalent_mod_stabilizer(
      tab.logicals()[0].x, lat.connecting_chain({8, 9}, {8, 3}, Axis::X)));

  // moving back restores the original stabilizer group and signs; the
  // interior tree may sit on an equivalent set of single-qubit terms
  ctx.move_hole(d, 0, Direction::Left, 1);
  CHECK(tab.canonical_group_rows() == group_before);
  CHECK(tab.equivalent_mod_stabilizer(tab.logicals()[0].x, logicals_before.x));
  CHECK(tab.equivalent_mod_stabilizer(tab.logicals()[0].z, logicals_before.z));
}

TEST_CASE("enlargement followed by contraction restores the tableau") {
  const Lattice lat = Lattice::build(12);
  Tableau tab = Tableau::from_lattice(lat);
  DeformationContext ctx(lat, tab);
  const std::size_t d = ctx.create_defect(CutKind::ZCut, {8, 9}, {8, 3});
  const auto group0 = tab.canonical_group_rows();
  const LogicalPair logicals0 = tab.logicals()[0];

  ctx.enlarge_hole(d, 0, 12);
  CHECK(logical_weights(lat, ctx.defect_snapshot(d)).ring == 12);
  const auto back = ctx.shrink_hole(d, 0, 4);
  CHECK(back.size() == 4);  // mirror of the growth schedule
  CHECK(tab.canonical_group_rows() == group0);
  CHECK(tab.equivalent_mod_stabilizer(tab.logicals()[0].x, logicals0.x));
  CHECK(tab.equivalent_mod_stabilizer(tab.logicals()[0].z, logicals0.z));
  CHECK_NOTHROW(tab.check_invariants(4));

  // partial contraction keeps an exact intermediate perimeter
  ctx.enlarge_hole(d, 0, 12);
  ctx.shrink_hole(d, 0, 8);
  CHECK(logical_weights(lat, ctx.defect_snapshot(d)).ring == 8);
  CHECK_THROWS_AS(ctx.shrink_hole(d, 0, 16), std::invalid_argument);
}

TEST_CASE("movement is path independent at the logical level") {
  // two monotone paths between the same endpoints: right-right-down-down
  // versus down-down-right-right
  auto run_path = [](const std::vector<Direction>& dirs) {
    const Lattice lat = Lattice::build(12);
    auto tab = std::make_unique<Tableau>(Tableau::from_lattice(lat));
    DeformationContext ctx(lat, *tab);
    const std::size_t d = ctx.create_defect(CutKind::ZCut, {6, 7}, {6, 3});
    ctx.enlarge_hole(d, 0, 8);
    for (Direction dir : dirs) ctx.move_hole(d, 0, dir, 1);
    return std::make_pair(std::move(tab), d);
  };
  auto [tab_a, da] = run_path({Direction::Right, Direction::Right,
                               Direction::Down, Direction::Down});
  auto [tab_b, db] = run_path({Direction::Down, Direction::Down,
                               Direction::Right, Direction::Right});
  // identical stabilizer groups with identical recorded signs, and
  // equivalent logical representatives
  CHECK(tab_a->canonical_group_rows() == tab_b->canonical_group_rows());
  const LogicalPair& la = tab_a->logicals()[0];
  const LogicalPair& lb = tab_b->logicals()[0];
  CHECK(tab_a->equivalent_mod_stabilizer(la.x, lb.x));
  CHECK(tab_a->equivalent_mod_stabilizer(la.z, lb.z));
}

TEST_CASE("two-phase movement agrees with the combined step") {
  const Lattice lat = Lattice::build(12);
  Tableau tab1 = Tableau::from_lattice(lat);
  Tableau tab2 = Tableau::from_lattice(lat);
  DeformationContext c1(lat, tab1), c2(lat, tab2);
  const std::size_t d1 = c1.create_defect(CutKind::ZCut, {8, 7}, {8, 3});
  const std::size_t d2 = c2.create_defect(CutKind::ZCut, {8, 7}, {8, 3});
  c1.grow_rect(d1, 0, 2, 4);
  c2.grow_rect(d2, 0, 2, 4);
  const auto s1 = c1.move_hole(d1, 0, Direction::Right, 1, false);
  const auto s2 = c2.move_hole(d2, 0, Direction::Right, 1, true);
  CHECK(s1.size() == 1);
  CHECK(s2.size() == 2);
  CHECK(canonical_rows(tab1) == canonical_rows(tab2));
}

TEST_CASE("braiding a Z-cut hole around an X-cut hole performs a CNOT") {
  const Lattice lat = Lattice::build(12);
  Tableau tab = Tableau::from_lattice(lat);
  DeformationContext ctx(lat, tab);

  const std::size_t control = ctx.create_defect(CutKind::ZCut, {6, 5}, {6, 1});
  const std::size_t target = ctx.create_defect(CutKind::XCut, {13, 12}, {13, 22});
  ctx.enlarge_hole(control, 0, 8);
  ctx.enlarge_hole(target, 0, 8);
  CHECK_NOTHROW(tab.check_invariants(4));

  auto res = ctx.braid(control, target);
  CHECK(res.path.closed());
  CHECK(res.report.x_control);
  CHECK(res.report.x_target);
  CHECK(res.report.z_control);
  CHECK(res.report.z_target);
  CHECK_NOTHROW(tab.check_invariants(4));
}

TEST_CASE("a loop that encloses nothing acts as the identity") {
  const Lattice lat = Lattice::build(12);
  Tableau tab = Tableau::from_lattice(lat);
  DeformationContext ctx(lat, tab);
  const std::size_t control = ctx.create_defect(CutKind::ZCut, {6, 5}, {6, 1});
  const std::size_t target = ctx.create_defect(CutKind::XCut, {13, 12}, {13, 22});
  ctx.enlarge_hole(control, 0, 8);
  ctx.enlarge_hole(target, 0, 8);

  const LogicalPair c0 = tab.logicals()[0];
  const LogicalPair t0 = tab.logicals()[1];
  BraidPath trivial;
  trivial.legs = {{Direction::Right, 1},
                  {Direction::Down, 1},
                  {Direction::Left, 1},
                  {Direction::Up, 1}};
  auto res = ctx.braid_loop(control, target, trivial);
  CHECK(tab.equivalent_mod_stabilizer(tab.logicals()[0].x, c0.x));
  CHECK(tab.equivalent_mod_stabilizer(tab.logicals()[0].z, c0.z));
  CHECK(tab.equivalent_mod_stabilizer(tab.logicals()[1].x, t0.x));
  CHECK(tab.equivalent_mod_stabilizer(tab.logicals()[1].z, t0.z));
  CHECK_FALSE(res.report.x_control);
  CHECK(res.report.x_target);
}

TEST_CASE("a wiggled path with the same winding gives the same mappings") {
  const Lattice lat = Lattice::build(12);
  Tableau tab = Tableau::from_lattice(lat);
  DeformationContext ctx(lat, tab);
  const std::size_t control = ctx.create_defect(CutKind::ZCut, {6, 5}, {6, 1});
  const std::size_t target = ctx.create_defect(CutKind::XCut, {13, 12}, {13, 22});
  ctx.enlarge_hole(control, 0, 8);
  ctx.enlarge_hole(target, 0, 8);

  BraidPath wiggled;
  wiggled.legs = {{Direction::Right, 6}, {Direction::Down, 6},
                  {Direction::Left, 2},  {Direction::Down, 1},
                  {Direction::Left, 1},  {Direction::Up, 1},
                  {Direction::Left, 3},  {Direction::Up, 6}};
  REQUIRE(wiggled.closed());
  auto res = ctx.braid_loop(control, target, wiggled);
  CHECK(res.report.x_control);
  CHECK(res.report.x_target);
  CHECK(res.report.z_control);
  CHECK(res.report.z_target);
}

TEST_CASE("unclosed braid paths are rejected") {
  const Lattice lat = Lattice::build(8);
  Tableau tab = Tableau::from_lattice(lat);
  DeformationContext ctx(lat, tab);
  const std::size_t control = ctx.create_defect(CutKind::ZCut, {6, 5}, {6, 1});
  const std::size_t target = ctx.create_defect(CutKind::XCut, {9, 10}, {9, 14});
  BraidPath open;
  open.legs = {{Direction::Right, 1}};
  CHECK_THROWS_AS(ctx.braid_loop(control, target, open), std::invalid_argument);
}

#include <doctest.h>

#include "holosurf/lattice.hpp"
#include "holosurf/symplectic.hpp"

using namespace holosurf;

TEST_CASE("patch counts") {
  CHECK_THROWS_AS(Lattice::build(1), std::invalid_argument);

  const Lattice l2 = Lattice::build(2);
  CHECK(l2.num_qubits() == 5);
  CHECK(l2.num_generators() == 4);

  const Lattice l8 = Lattice::build(8);
  CHECK(l8.num_qubits() == 113);
  CHECK(l8.num_generators() == 112);
}

TEST_CASE("generator structure and pairwise commutation") {
  const Lattice lat = Lattice::build(8);
  int xs = 0, zp = 0;
  for (const auto& g : lat.generators()) {
    CHECK(g.support.size() >= 3);
    CHECK(g.support.size() <= 4);
    (g.kind == GenKind::Xs ? xs : zp)++;
    // boundary layout: 3-body Z_p only on top/bottom, 3-body X_s only on
    // left/right
    if (g.support.size() == 3) {
      if (g.kind == GenKind::Zp) {
        CHECK((g.pos.row == 0 || g.pos.row == lat.grid_extent() - 1));
      } else {
        CHECK((g.pos.col == 0 || g.pos.col == lat.grid_extent() - 1));
      }
    }
  }
  CHECK(xs == 56);
  CHECK(zp == 56);
  for (std::size_t i = 0; i < lat.num_generators(); ++i) {
    for (std::size_t j = i + 1; j < lat.num_generators(); ++j) {
      CHECK(lat.generator(i).pauli().commutes_with(lat.generator(j).pauli()));
    }
  }
}

TEST_CASE("patch logical count from symplectic rank") {
  const Lattice lat = Lattice::build(4);
  std::vector<PauliOp> gens;
  for (const auto& g : lat.generators()) gens.push_back(g.pauli());
  const std::size_t rank = symplectic_rank(gens, lat.num_qubits());
  CHECK(lat.num_qubits() - rank == 1);  // one patch logical qubit
}

TEST_CASE("double cut creation") {
  const Lattice lat = Lattice::build(8);

  // X-cut: ring of sigma_x around the first hole, sigma_z chain between.
  const GridPos v1{7, 4}, v2{7, 10};
  const DefectQubit dq = create_double_cut(lat, CutKind::XCut, v1, v2);
  CHECK(dq.init_label == "+");
  CHECK_FALSE(dq.logical_x.commutes_with(dq.logical_z));
  CHECK(dq.logical_x == lat.generator(lat.generator_at(v1)).pauli());
  CHECK(dq.logical_z.weight() == 3);  // chain over three data qubits
  for (std::size_t g = 0; g < lat.num_generators(); ++g) {
    const GridPos p = lat.generator(g).pos;
    if (p == v1 || p == v2) continue;
    CHECK(dq.logical_x.commutes_with(lat.generator(g).pauli()));
    CHECK(dq.logical_z.commutes_with(lat.generator(g).pauli()));
  }

  // rank drops by two -> three logical qubits total
  std::vector<PauliOp> act;
  for (std::size_t g = 0; g < lat.num_generators(); ++g) {
    const GridPos p = lat.generator(g).pos;
    if (p == v1 || p == v2) continue;
    act.push_back(lat.generator(g).pauli());
  }
  CHECK(lat.num_qubits() - symplectic_rank(act, lat.num_qubits()) == 3);

  CHECK_THROWS_AS(create_double_cut(lat, CutKind::ZCut, v1, v2),
                  std::invalid_argument);
  CHECK_THROWS_AS(create_double_cut(lat, CutKind::XCut, v1, v1),
                  std::invalid_argument);

  const DefectQubit zq =
      create_double_cut(lat, CutKind::ZCut, GridPos{6, 5}, GridPos{6, 9});
  CHECK(zq.init_label == "0");
  CHECK_FALSE(zq.logical_x.commutes_with(zq.logical_z));
}

TEST_CASE("minimal double cut weight is 4") {
  const Lattice lat = Lattice::build(8);
  const DefectQubit dq =
      create_double_cut(lat, CutKind::ZCut, GridPos{6, 3}, GridPos{6, 11});
  const LogicalWeights w = logical_weights(lat, dq);
  CHECK(w.ring == 4);
  CHECK(w.chain == 4);
  CHECK(min_logical_weight(lat, dq) == 4);
  CHECK(dq.distance == 4);
}

TEST_CASE("square hole of perimeter d at separation d has weight d") {
  const Lattice lat = Lattice::build(12);
  // 2x2 holes (perimeter 8), anchors separated by 8 data-qubit steps
  DefectQubit dq = create_double_cut(lat, CutKind::ZCut, GridPos{10, 3},
                                     GridPos{10, 13});
  dq.holes[0] = HoleRegion{{10, 3}, 2, 2};
  dq.holes[1] = HoleRegion{{10, 13}, 2, 2};
  const LogicalWeights w = logical_weights(lat, dq);
  CHECK(w.ring == 8);
  // gap between regions: anchors 10 cols apart, right edge of hole 0 at col
  // 5, hole 1 begins at col 13 -> chain of 4 edges... the shortest chain
  // between the contracted regions
  CHECK(w.chain == 4);
}

TEST_CASE("enlarged single-hole ring weight equals the perimeter") {
  const Lattice lat = Lattice::build(14);
  DefectQubit dq = create_double_cut(lat, CutKind::XCut, GridPos{13, 6},
                                     GridPos{13, 22});
  for (int s = 1; s <= 3; ++s) {
    dq.holes[0] = HoleRegion{{13, 6}, s, s};
    CHECK(logical_weights(lat, dq).ring == 4 * s);
  }
}

TEST_CASE("boundary can shorten the chain class") {
  const Lattice lat = Lattice::build(8);
  // X-cut holes near the top Z boundary: chains may exit through it
  const DefectQubit dq =
      create_double_cut(lat, CutKind::XCut, GridPos{1, 2}, GridPos{1, 12});
  const LogicalWeights w = logical_weights(lat, dq);
  CHECK(w.chain == 2);  // one edge up from each hole
}

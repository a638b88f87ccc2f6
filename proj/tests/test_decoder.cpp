#include <doctest.h>

#include <cmath>

#include "holosurf/decoder.hpp"
#include "holosurf/rng.hpp"

using namespace holosurf;

namespace {

// Perfect reported signs of the whole lattice against an error frame.
std::vector<int> perfect_signs(const Lattice& lat, const PauliOp& frame) {
  std::vector<int> signs(lat.num_generators(), +1);
  for (uint32_t g = 0; g < lat.num_generators(); ++g) {
    if (!lat.generator(g).pauli().commutes_with(frame)) signs[g] = -1;
  }
  return signs;
}

PauliOp patch_logical_x(const Lattice& lat, int row) {
  PauliOp p;
  for (int c = 0; c < lat.grid_extent(); c += 2) {
    p.set_factor(lat.qubit_at({row, c}), Axis::X);
  }
  return p;
}

PauliOp patch_logical_z(const Lattice& lat, int col) {
  PauliOp p;
  for (int r = 0; r < lat.grid_extent(); r += 2) {
    p.set_factor(lat.qubit_at({r, col}), Axis::Z);
  }
  return p;
}

}  // namespace

TEST_CASE("detection events") {
  SyndromeHistory h;
  h.rounds = {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
  CHECK(detection_events(h).empty());

  // data error before round 1: a pair of events in that round only
  const Lattice lat = Lattice::build(3);
  const PauliOp err = PauliOp::single(lat.qubit_at({2, 2}), Axis::X);
  SyndromeHistory h2;
  h2.rounds.push_back(perfect_signs(lat, PauliOp()));
  h2.rounds.push_back(perfect_signs(lat, err));
  h2.rounds.push_back(perfect_signs(lat, err));
  const auto ev = detection_events(h2);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0].round == 1);
  CHECK(ev[1].round == 1);

  // measurement flip at round k: events at k and k+1 on the same generator
  SyndromeHistory h3;
  h3.rounds = {{1, 1}, {1, -1}, {1, 1}};
  const auto ev3 = detection_events(h3);
  REQUIRE(ev3.size() == 2);
  CHECK(ev3[0].gen == 1);
  CHECK(ev3[0].round == 1);
  CHECK(ev3[1].gen == 1);
  CHECK(ev3[1].round == 2);

  SyndromeHistory empty;
  CHECK_THROWS_AS(detection_events(empty), std::invalid_argument);
}

TEST_CASE("adjacent events match each other rather than the boundary") {
  const Lattice lat = Lattice::build(5);
  Decoder dec(lat);
  // one bulk bit flip: two adjacent plaquette events
  const PauliOp err = PauliOp::single(lat.qubit_at({4, 4}), Axis::X);
  SyndromeHistory h;
  h.rounds.push_back(perfect_signs(lat, err));
  const auto res = dec.decide_and_correct(h, err, patch_logical_x(lat, 4),
                                          patch_logical_z(lat, 4));
  CHECK(res.x_side.matching.mate[0] == 1);
  CHECK(res.x_side.matching.weight == 1);
  CHECK(res.correction == err.bare());
  CHECK_FALSE(res.failure_x);
  CHECK_FALSE(res.failure_z);
  CHECK(res.residual.is_identity());
}

TEST_CASE("matching optimality against brute force on random instances") {
  Rng rng(31337);
  for (int t = 0; t < 1000; ++t) {
    MatchInstance inst;
    inst.n = 2 + rng.next_below(7);  // up to 8 events
    inst.pair_w.assign(inst.n * inst.n, 0);
    inst.boundary_w.assign(inst.n, MatchInstance::kNoBoundary);
    const bool with_boundary = rng.bernoulli(0.7);
    for (std::size_t i = 0; i < inst.n; ++i) {
      if (with_boundary) {
        inst.boundary_w[i] = 1 + static_cast<long long>(rng.next_below(20));
      }
      for (std::size_t j = i + 1; j < inst.n; ++j) {
        const long long w = 1 + static_cast<long long>(rng.next_below(20));
        inst.pw(i, j) = w;
        inst.pw(j, i) = w;
      }
    }
    if (!with_boundary && inst.n % 2 == 1) {
      CHECK_THROWS_AS(match_exact(inst), std::invalid_argument);
      continue;
    }
    const Matching fast = match_exact(inst);
    const Matching slow = match_brute_force(inst);
    CHECK(fast.weight == slow.weight);
    // the witness pairing really has that weight and is a valid matching
    long long check = 0;
    for (std::size_t i = 0; i < inst.n; ++i) {
      if (fast.mate[i] < 0) {
        check += inst.boundary_w[i];
      } else {
        CHECK(fast.mate[static_cast<std::size_t>(fast.mate[i])] ==
              static_cast<int>(i));
        if (static_cast<std::size_t>(fast.mate[i]) > i) {
          check += inst.pw(i, static_cast<std::size_t>(fast.mate[i]));
        }
      }
    }
    CHECK(check == fast.weight);
  }
}

TEST_CASE("matching beats greedy pairing") {
  Rng rng(99);
  for (int t = 0; t < 100; ++t) {
    MatchInstance inst;
    inst.n = 6;
    inst.pair_w.assign(36, 0);
    inst.boundary_w.assign(6, MatchInstance::kNoBoundary);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = i + 1; j < 6; ++j) {
        const long long w = 1 + static_cast<long long>(rng.next_below(30));
        inst.pw(i, j) = w;
        inst.pw(j, i) = w;
      }
    }
    // greedy: repeatedly take the globally cheapest remaining pair
    std::vector<bool> used(6, false);
    long long greedy = 0;
    for (int k = 0; k < 3; ++k) {
      long long best = MatchInstance::kNoBoundary;
      std::size_t bi = 0, bj = 0;
      for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = i + 1; j < 6; ++j) {
          if (!used[i] && !used[j] && inst.pw(i, j) < best) {
            best = inst.pw(i, j);
            bi = i;
            bj = j;
          }
        }
      }
      used[bi] = used[bj] = true;
      greedy += best;
    }
    CHECK(match_exact(inst).weight <= greedy);
  }
}

TEST_CASE("short chains are corrected, stretched pairs reproduce the failure") {
  const Lattice lat = Lattice::build(5);
  Decoder dec(lat);
  const PauliOp lx = patch_logical_x(lat, 4);
  const PauliOp lz = patch_logical_z(lat, 4);

  // short phase-flip chain: annihilated properly
  const PauliOp purple = PauliOp::single(lat.qubit_at({3, 3}), Axis::Z) *
                         PauliOp::single(lat.qubit_at({4, 4}), Axis::Z);
  SyndromeHistory hp;
  hp.rounds.push_back(perfect_signs(lat, purple));
  const auto okres = dec.decide_and_correct(hp, purple, lx, lz);
  CHECK_FALSE(okres.failure_x);
  CHECK_FALSE(okres.failure_z);

  // bit-flip segments hugging both boundaries: the two interior events get
  // matched to each other and the correction closes a logical X
  PauliOp red = PauliOp::single(lat.qubit_at({4, 0}), Axis::X) *
                PauliOp::single(lat.qubit_at({4, 2}), Axis::X) *
                PauliOp::single(lat.qubit_at({4, 6}), Axis::X) *
                PauliOp::single(lat.qubit_at({4, 8}), Axis::X);
  SyndromeHistory hr;
  hr.rounds.push_back(perfect_signs(lat, red));
  const auto bad = dec.decide_and_correct(hr, red, lx, lz);
  CHECK(bad.failure_x);
  CHECK_FALSE(bad.failure_z);
  CHECK(bad.residual.commutes_with(lat.generator(0).pauli()));
}

TEST_CASE("exhaustive low-weight injection with perfect syndromes") {
  // weight-1 at distance 4 and weight-2 at distance 5 are always corrected
  for (int L : {4, 5}) {
    const Lattice lat = Lattice::build(L);
    Decoder dec(lat);
    const PauliOp lx = patch_logical_x(lat, 2);
    const PauliOp lz = patch_logical_z(lat, 2);
    const std::size_t max_weight = L == 4 ? 1 : 2;

    std::vector<PauliOp> errors;
    for (QubitId q = 0; q < lat.num_qubits(); ++q) {
      for (int a = 1; a <= 3; ++a) {
        errors.push_back(PauliOp::single(q, static_cast<Axis>(a)));
      }
    }
    std::vector<PauliOp> cases = errors;
    if (max_weight >= 2) {
      for (std::size_t i = 0; i < errors.size(); ++i) {
        for (std::size_t j = i + 1; j < errors.size(); ++j) {
          const PauliOp e = errors[i] * errors[j];
          if (e.weight() == 2) cases.push_back(e);
        }
      }
    }
    int failures = 0;
    for (const auto& e : cases) {
      SyndromeHistory h;
      h.rounds.push_back(perfect_signs(lat, e));
      const auto res = dec.decide_and_correct(h, e, lx, lz);
      if (res.failure_x || res.failure_z) ++failures;
      // decoding always returns to the codespace
      for (uint32_t g = 0; g < lat.num_generators(); ++g) {
        CHECK(res.residual.commutes_with(lat.generator(g).pauli()));
      }
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("decoding is deterministic for a given history") {
  const Lattice lat = Lattice::build(5);
  Decoder dec(lat);
  const PauliOp err = PauliOp::single(lat.qubit_at({2, 4}), Axis::X) *
                      PauliOp::single(lat.qubit_at({6, 2}), Axis::Z);
  SyndromeHistory h;
  h.rounds.push_back(perfect_signs(lat, err));
  h.rounds.push_back(perfect_signs(lat, err));
  const auto a = dec.decide_and_correct(h, err, patch_logical_x(lat, 4),
                                        patch_logical_z(lat, 4));
  const auto b = dec.decide_and_correct(h, err, patch_logical_x(lat, 4),
                                        patch_logical_z(lat, 4));
  CHECK(a.correction == b.correction);
  CHECK(a.x_side.matching.mate == b.x_side.matching.mate);
  CHECK(a.z_side.matching.mate == b.z_side.matching.mate);
}

TEST_CASE("movement vote") {
  const int d = 16;  // 4 rows of 2 outcomes
  std::vector<std::vector<int>> clean(4, std::vector<int>(2, +1));
  CHECK_FALSE(movement_vote(clean, d).trigger_full_ec);

  auto rows = clean;
  rows[2] = {-1, -1};  // corrupted row
  const auto v = movement_vote(rows, d);
  CHECK(v.trigger_full_ec);
  REQUIRE(v.flagged_rows.size() == 1);
  CHECK(v.flagged_rows[0] == 2);

  // ties flag the row: a missed detection needs a strict minority of -1
  auto tie = clean;
  tie[0] = {-1, +1};
  CHECK(movement_vote(tie, d).trigger_full_ec);

  CHECK_THROWS_AS(movement_vote(clean, 24), std::invalid_argument);
}

TEST_CASE("contact vote") {
  CHECK(contact_vote({+1, +1, +1}) == +1);
  CHECK(contact_vote({+1, -1, +1}) == +1);
  CHECK(contact_vote({-1, -1, +1}) == -1);
  CHECK_THROWS_AS(contact_vote({+1, -1}), std::runtime_error);
  CHECK_THROWS_AS(contact_vote({}), std::invalid_argument);
}

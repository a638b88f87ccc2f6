#include <doctest.h>

#include <array>
#include <cmath>
#include <sstream>

#include "holosurf/deformation.hpp"
#include "holosurf/noise.hpp"

using namespace holosurf;

namespace {

// Canonical movement scenario pinned for the propagation goldens: a Z-cut
// 2x4 hole on columns 7/9, rows 8..14, companion hole at (8,3).
struct MoveScenario {
  Lattice lat = Lattice::build(10);
  Tableau tab = Tableau::from_lattice(lat);
  DeformationContext ctx{lat, tab};
  std::size_t defect;
  std::size_t mark;  // history index before the movement

  MoveScenario() {
    defect = ctx.create_defect(CutKind::ZCut, {8, 7}, {8, 3});
    ctx.grow_rect(defect, 0, 2, 4);
    mark = tab.history().size();
  }
};

PauliOp zq(const Lattice& lat, int r, int c, Axis a) {
  return PauliOp::single(lat.qubit_at({r, c}), a);
}

}  // namespace

TEST_CASE("single boundary phase error smears over the absorbed plaquette") {
  // enlargement golden geometry (see test_deformation)
  const Lattice lat = Lattice::build(8);
  Tableau tab = Tableau::from_lattice(lat);
  DeformationContext ctx(lat, tab);
  const std::size_t d = ctx.create_defect(CutKind::ZCut, {6, 7}, {6, 3});
  const std::size_t mark = tab.history().size();
  ctx.enlarge_hole(d, 0, 8);

  // the error sits on the absorption edge before the vertical step; its
  // image is read off right after that step
  const PauliOp e0 = zq(lat, 7, 7, Axis::Z);
  const PauliOp got = propagate(e0, tab.history(), mark, mark + 1);
  PauliOp expected = zq(lat, 7, 7, Axis::X) * zq(lat, 8, 6, Axis::Z) *
                     zq(lat, 8, 8, Axis::Z) * zq(lat, 9, 7, Axis::Z);
  CHECK(got == expected);

  // commuting errors pass through untouched
  const PauliOp far = zq(lat, 0, 0, Axis::Z);
  CHECK(propagate(far, tab.history(), mark, tab.history().size()) == far);
}

TEST_CASE("two-unit movement drags boundary phase errors into ten operators") {
  MoveScenario s;
  const PauliOp e0 = zq(s.lat, 8, 10, Axis::Z) * zq(s.lat, 12, 10, Axis::Z);
  s.ctx.move_hole(s.defect, 0, Direction::Right, 2);

  const PauliOp raw =
      propagate(e0, s.tab.history(), s.mark, s.tab.history().size());
  PauliOp expected;
  for (int r : {8, 12}) {
    expected = expected * zq(s.lat, r - 1, 11, Axis::Z) *
               zq(s.lat, r + 1, 11, Axis::Z) * zq(s.lat, r - 1, 13, Axis::Z) *
               zq(s.lat, r + 1, 13, Axis::Z) * zq(s.lat, r, 14, Axis::Z);
  }
  CHECK(expected.weight() == 10);
  CHECK(s.tab.equivalent_mod_stabilizer(raw, expected));
  CHECK(s.tab.shorten_mod_stabilizer(raw) == expected);
}

TEST_CASE("two-unit movement turns boundary flips into twelve operators") {
  MoveScenario s;
  const PauliOp e0 = zq(s.lat, 8, 10, Axis::X) * zq(s.lat, 12, 10, Axis::X);
  s.ctx.move_hole(s.defect, 0, Direction::Right, 2);

  const PauliOp raw =
      propagate(e0, s.tab.history(), s.mark, s.tab.history().size());
  PauliOp expected;
  for (int r : {8, 12}) {
    expected = expected * zq(s.lat, r, 10, Axis::Y) *
               zq(s.lat, r - 1, 11, Axis::Z) * zq(s.lat, r + 1, 11, Axis::Z) *
               zq(s.lat, r - 1, 13, Axis::Z) * zq(s.lat, r + 1, 13, Axis::Z) *
               zq(s.lat, r, 14, Axis::Z);
  }
  expected.mul_phase(2);  // net minus sign from the two flips
  CHECK(expected.weight() == 12);
  CHECK(s.tab.equivalent_mod_stabilizer(raw, expected));
  CHECK(s.tab.shorten_mod_stabilizer(raw) == expected);
}

TEST_CASE("propagation is multiplicative") {
  MoveScenario s;
  s.ctx.move_hole(s.defect, 0, Direction::Right, 1);
  Rng rng(41);
  for (int t = 0; t < 50; ++t) {
    PauliOp e1, e2;
    for (int k = 0; k < 2; ++k) {
      e1.set_factor(static_cast<QubitId>(rng.next_below(s.lat.num_qubits())),
                    static_cast<Axis>(1 + rng.next_below(3)));
      e2.set_factor(static_cast<QubitId>(rng.next_below(s.lat.num_qubits())),
                    static_cast<Axis>(1 + rng.next_below(3)));
    }
    const auto end = s.tab.history().size();
    CHECK(propagate(e1 * e2, s.tab.history(), s.mark, end) ==
          propagate(e1, s.tab.history(), s.mark, end) *
              propagate(e2, s.tab.history(), s.mark, end));
  }
  CHECK_THROWS_AS(propagate(PauliOp(), s.tab.history(), 3, 1),
                  std::invalid_argument);
}

TEST_CASE("rotation-only segments preserve the violation count") {
  // enlargement history carries no toggles, so the excited-generator count
  // of an error is invariant along it
  const Lattice lat = Lattice::build(8);
  Tableau tab = Tableau::from_lattice(lat);
  DeformationContext ctx(lat, tab);
  const std::size_t d = ctx.create_defect(CutKind::ZCut, {6, 7}, {6, 3});
  const std::size_t mark = tab.history().size();
  const Tableau tab_at_mark = tab;
  ctx.enlarge_hole(d, 0, 8);
  Rng rng(43);
  for (int t = 0; t < 50; ++t) {
    PauliOp e;
    for (int k = 0; k < 2; ++k) {
      e.set_factor(static_cast<QubitId>(rng.next_below(lat.num_qubits())),
                   static_cast<Axis>(1 + rng.next_below(3)));
    }
    const auto end = tab.history().size();
    CHECK(tab_at_mark.anticommute_count(e) ==
          tab.anticommute_count(propagate(e, tab.history(), mark, end)));
  }
}

TEST_CASE("gap classification against the current tableau") {
  MoveScenario s;
  // boundary rung of the hole: a phase flip excites two vertex terms, a bit
  // flip only the one surviving plaquette
  CHECK(classify_gap(s.tab, s.lat.qubit_at({8, 10}), Axis::Z) ==
        GapClass::Boundary4J);
  CHECK(classify_gap(s.tab, s.lat.qubit_at({8, 10}), Axis::X) ==
        GapClass::Bulk2J);
  // interior tree edge: a flip along the term axis is free
  CHECK(classify_gap(s.tab, s.lat.qubit_at({9, 7}), Axis::X) ==
        GapClass::Unprotected);
  CHECK(classify_gap(s.tab, s.lat.qubit_at({9, 7}), Axis::Z) ==
        GapClass::Boundary4J);
  // top lattice boundary: a phase flip excites a single vertex
  CHECK(classify_gap(s.tab, s.lat.qubit_at({0, 2}), Axis::Z) ==
        GapClass::Bulk2J);

  // contact-configured X-cut pair: the shared qubit's bit flip pays 4J and
  // its phase flip is free
  const Lattice lat = Lattice::build(8);
  Tableau tab = Tableau::from_lattice(lat);
  DeformationContext ctx(lat, tab);
  ctx.create_defect(CutKind::XCut, {7, 4}, {7, 6});
  CHECK(classify_gap(tab, lat.qubit_at({7, 5}), Axis::X) ==
        GapClass::Boundary4J);
  CHECK(classify_gap(tab, lat.qubit_at({7, 5}), Axis::Z) ==
        GapClass::Unprotected);
}

TEST_CASE("thermal sampling frequencies") {
  NoiseParams prm;
  prm.cbJ = 1000.0;
  prm.p = 0.0;
  const Lattice lat = Lattice::build(3);
  Tableau tab = Tableau::from_lattice(lat);
  Rng rng(1);
  CHECK(sample_thermal(prm, tab, 10, rng).empty());

  // one-qubit toy pinned to |+>: sigma_z is a 2J event, sigma_x is free
  Tableau toy = Tableau::from_generators({PauliOp::parse("+ X0")}, 1);
  NoiseParams prm2;
  prm2.cbJ = 3.0;
  prm2.p = 0.0;
  Rng rng2(77);
  const auto events = sample_thermal(prm2, toy, 1000000, rng2);
  long long z_events = 0;
  for (const auto& e : events) {
    CHECK(e.axis == Axis::Z);
    CHECK(e.gap_class == GapClass::Bulk2J);
    ++z_events;
  }
  const double rate = std::exp(-2.0 * prm2.cbJ);
  const double sigma = std::sqrt(1e6 * rate * (1 - rate));
  CHECK(std::abs(z_events - 1e6 * rate) <= 3.0 * sigma);
}

TEST_CASE("event log round trip") {
  std::vector<ErrorEvent> events = {
      {0, 3, Axis::X, GapClass::Bulk2J},
      {5, 17, Axis::Z, GapClass::Boundary4J},
      {9, 2, Axis::X, GapClass::Unprotected},
  };
  const std::string csv = events_to_csv(events);
  std::istringstream is(csv);
  const auto back = events_from_csv(is);
  REQUIRE(back.size() == events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    CHECK(back[i].step == events[i].step);
    CHECK(back[i].qubit == events[i].qubit);
    CHECK(back[i].axis == events[i].axis);
    CHECK(back[i].gap_class == events[i].gap_class);
  }
}

TEST_CASE("noiseless syndrome round reads the frame") {
  const Lattice lat = Lattice::build(3);
  NoiseParams prm;
  prm.p = 0.0;
  Rng rng(5);

  PauliOp frame;
  auto rep = syndrome_round(lat, frame, prm, rng);
  for (int v : rep) CHECK(v == +1);
  CHECK(frame.is_identity());

  // single bulk bit flip: exactly the two adjacent plaquettes light up
  frame = PauliOp::single(lat.qubit_at({2, 2}), Axis::X);
  rep = syndrome_round(lat, frame, prm, rng);
  int flipped = 0;
  for (uint32_t g = 0; g < lat.num_generators(); ++g) {
    if (rep[g] == -1) {
      ++flipped;
      CHECK(lat.generator(g).kind == GenKind::Zp);
      bool touches = false;
      for (QubitId q : lat.generator(g).support) {
        touches |= q == lat.qubit_at({2, 2});
      }
      CHECK(touches);
    }
  }
  CHECK(flipped == 2);
  CHECK(frame == PauliOp::single(lat.qubit_at({2, 2}), Axis::X));
}

// Independent oracle for the circuit-level fault model: enumerate every
// single-fault pattern through a from-scratch replay of the schedule and
// accumulate its first-order probability of flipping each report.
namespace {

struct ReplayOracle {
  const Lattice& lat;
  std::vector<uint32_t> gens;
  std::vector<std::array<int, 4>> slots;

  explicit ReplayOracle(const Lattice& l) : lat(l) {
    for (uint32_t g = 0; g < lat.num_generators(); ++g) gens.push_back(g);
    slots.assign(gens.size(), {-1, -1, -1, -1});
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto& g = lat.generator(gens[i]);
      const GridPos nb[4] = {{g.pos.row - 1, g.pos.col},
                             {g.pos.row, g.pos.col - 1},
                             {g.pos.row, g.pos.col + 1},
                             {g.pos.row + 1, g.pos.col}};
      for (int k = 0; k < 4; ++k) {
        if (lat.is_data_pos(nb[k])) slots[i][k] = static_cast<int>(lat.qubit_at(nb[k]));
      }
    }
  }

  // fault kinds: 0 init X on gen; 1/2 H errors (which, pauli); 3 CNOT error
  // (slice, pauli pair); 4 measurement flip
  std::vector<int> replay(int kind, std::size_t gi, int a, int b) const {
    std::vector<uint8_t> dx(lat.num_qubits(), 0), dz(lat.num_qubits(), 0);
    std::vector<uint8_t> ax(gens.size(), 0), az(gens.size(), 0);
    std::vector<uint8_t> meas_flip(gens.size(), 0);
    auto inject_anc = [&](std::size_t i, int code) {
      if (code & 1) ax[i] ^= 1;
      if (code & 2) az[i] ^= 1;
    };
    if (kind == 0) ax[gi] ^= 1;
    auto h_all = [&](int which, int err_pauli) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (lat.generator(gens[i]).kind != GenKind::Xs) continue;
        std::swap(ax[i], az[i]);
        if (kind == 1 + which && i == gi) inject_anc(i, err_pauli);
      }
    };
    h_all(0, a);
    for (int slice = 0; slice < 4; ++slice) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const int qs = slots[i][slice];
        if (qs < 0) continue;
        const auto q = static_cast<QubitId>(qs);
        if (lat.generator(gens[i]).kind == GenKind::Zp) {
          ax[i] ^= dx[q];
          dz[q] ^= az[i];
        } else {
          dx[q] ^= ax[i];
          az[i] ^= dz[q];
        }
        if (kind == 3 && i == gi && slice == a) {
          const int on_anc = b / 4, on_data = b % 4;
          inject_anc(i, on_anc);
          if (on_data & 1) dx[q] ^= 1;
          if (on_data & 2) dz[q] ^= 1;
        }
      }
    }
    h_all(1, a);
    if (kind == 4) meas_flip[gi] ^= 1;
    std::vector<int> rep(gens.size(), +1);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      rep[i] = ((ax[i] ^ meas_flip[i]) != 0) ? -1 : +1;
    }
    return rep;
  }

  // Fault sites are independent and their effects compose by XOR, so the
  // exact flip probability is (1 - prod_sites(1 - 2 q_site)) / 2, with
  // q_site the site's total mass of report-flipping outcomes.
  std::vector<double> expected_flip_probs(double p) const {
    std::vector<double> prod(gens.size(), 1.0);
    auto fold_site = [&](const std::vector<double>& site_mass) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        prod[i] *= 1.0 - 2.0 * site_mass[i];
      }
    };
    auto site_from = [&](auto&& enumerate) {
      std::vector<double> mass(gens.size(), 0.0);
      enumerate([&](const std::vector<int>& rep, double w) {
        for (std::size_t i = 0; i < gens.size(); ++i) {
          if (rep[i] == -1) mass[i] += w;
        }
      });
      fold_site(mass);
    };
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      site_from([&](auto&& acc) { acc(replay(0, gi, 0, 0), p); });
      site_from([&](auto&& acc) { acc(replay(4, gi, 0, 0), p); });
      if (lat.generator(gens[gi]).kind == GenKind::Xs) {
        for (int which = 0; which < 2; ++which) {
          site_from([&](auto&& acc) {
            for (int pauli = 1; pauli <= 3; ++pauli) {
              acc(replay(1 + which, gi, pauli, 0), p / 3.0);
            }
          });
        }
      }
      for (int slice = 0; slice < 4; ++slice) {
        if (slots[gi][slice] < 0) continue;
        site_from([&](auto&& acc) {
          for (int pair = 1; pair < 16; ++pair) {
            acc(replay(3, gi, slice, pair), p / 15.0);
          }
        });
      }
    }
    std::vector<double> prob(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) prob[i] = (1.0 - prod[i]) / 2.0;
    return prob;
  }
};

}  // namespace

TEST_CASE("noisy syndrome flip rates match the single-fault enumeration") {
  const Lattice lat = Lattice::build(3);
  const ReplayOracle oracle(lat);
  NoiseParams prm;
  prm.p = 1e-3;
  const auto expected = oracle.expected_flip_probs(prm.p);

  const long long rounds = 200000;
  std::vector<long long> flips(lat.num_generators(), 0);
  Rng rng(2024);
  for (long long r = 0; r < rounds; ++r) {
    PauliOp frame;  // independent rounds: fresh frame
    const auto rep = syndrome_round(lat, frame, prm, rng);
    for (std::size_t g = 0; g < rep.size(); ++g) {
      if (rep[g] == -1) ++flips[g];
    }
  }
  for (std::size_t g = 0; g < lat.num_generators(); ++g) {
    const double mean = expected[g] * rounds;
    const double sigma = std::sqrt(expected[g] * (1 - expected[g]) * rounds);
    CHECK(std::abs(flips[g] - mean) <= 3.0 * sigma);
  }
}

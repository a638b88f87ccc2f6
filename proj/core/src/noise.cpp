#include "holosurf/noise.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace holosurf {

const char* gap_class_name(GapClass c) {
  switch (c) {
    case GapClass::Unprotected: return "unprotected";
    case GapClass::Bulk2J: return "bulk-2J";
    case GapClass::Boundary4J: return "boundary-4J";
  }
  throw std::logic_error("bad gap class");
}

GapClass gap_class_from_name(const std::string& name) {
  if (name == "unprotected") return GapClass::Unprotected;
  if (name == "bulk-2J") return GapClass::Bulk2J;
  if (name == "boundary-4J") return GapClass::Boundary4J;
  throw std::invalid_argument("bad gap class name: " + name);
}

GapClass classify_gap(const Tableau& tab, QubitId qubit, Axis axis) {
  const int count = tab.anticommute_count(PauliOp::single(qubit, axis));
  if (count == 0) return GapClass::Unprotected;
  if (count == 1) return GapClass::Bulk2J;
  return GapClass::Boundary4J;
}

double gap_rate(GapClass c, const NoiseParams& prm) {
  switch (c) {
    case GapClass::Unprotected: return prm.p;
    case GapClass::Bulk2J: return std::exp(-2.0 * prm.cbJ);
    case GapClass::Boundary4J: return std::exp(-4.0 * prm.cbJ);
  }
  throw std::logic_error("bad gap class");
}

std::vector<ErrorEvent> sample_thermal(const NoiseParams& prm,
                                       const Tableau& tab, long long steps,
                                       Rng& rng) {
  // The tableau is static while sampling: classify each (qubit, axis) once.
  const auto n = static_cast<QubitId>(tab.num_qubits());
  std::vector<GapClass> cls(2 * n);
  std::vector<double> rate(2 * n);
  for (QubitId q = 0; q < n; ++q) {
    cls[2 * q] = classify_gap(tab, q, Axis::X);
    cls[2 * q + 1] = classify_gap(tab, q, Axis::Z);
    rate[2 * q] = gap_rate(cls[2 * q], prm);
    rate[2 * q + 1] = gap_rate(cls[2 * q + 1], prm);
  }
  std::vector<ErrorEvent> events;
  for (long long t = 0; t < steps; ++t) {
    for (QubitId q = 0; q < n; ++q) {
      if (rng.bernoulli(rate[2 * q])) {
        events.push_back({t, q, Axis::X, cls[2 * q]});
      }
      if (rng.bernoulli(rate[2 * q + 1])) {
        events.push_back({t, q, Axis::Z, cls[2 * q + 1]});
      }
    }
  }
  return events;
}

PauliOp propagate(const PauliOp& error,
                  const std::vector<DeformationStep>& history,
                  std::size_t from_step, std::size_t to_step) {
  if (from_step > to_step || to_step > history.size()) {
    throw std::invalid_argument("propagation window out of range");
  }
  PauliOp cur = error;
  for (std::size_t s = from_step; s < to_step; ++s) {
    for (const auto& q : history[s].rotations) {
      cur = conjugate_by_rotation(cur, q);
    }
  }
  return cur;
}

std::string events_to_csv(const std::vector<ErrorEvent>& events) {
  std::ostringstream os;
  os << "step,qubit,axis,gap_class\n";
  for (const auto& e : events) {
    os << e.step << ',' << e.qubit << ',' << axis_char(e.axis) << ','
       << gap_class_name(e.gap_class) << '\n';
  }
  return os.str();
}

std::vector<ErrorEvent> events_from_csv(std::istream& in) {
  std::vector<ErrorEvent> events;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream ls(line);
    std::string tok;
    ErrorEvent e;
    std::getline(ls, tok, ',');
    e.step = std::stoll(tok);
    std::getline(ls, tok, ',');
    e.qubit = static_cast<QubitId>(std::stoul(tok));
    std::getline(ls, tok, ',');
    if (tok.size() != 1) throw std::invalid_argument("bad axis field");
    e.axis = axis_from_char(tok[0]);
    std::getline(ls, tok, ',');
    e.gap_class = gap_class_from_name(tok);
    events.push_back(e);
  }
  return events;
}

namespace {

struct FrameBits {
  std::vector<uint8_t> x, z;
};

void inject_pauli(FrameBits& f, QubitId q, int code) {
  // code: 1 = X, 2 = Z, 3 = Y
  if (code & 1) f.x[q] ^= 1;
  if (code & 2) f.z[q] ^= 1;
}

}  // namespace

std::vector<int> syndrome_round(const Lattice& lat, PauliOp& frame,
                                const NoiseParams& prm, Rng& rng,
                                const std::vector<uint32_t>* active) {
  std::vector<uint32_t> all;
  if (!active) {
    all.resize(lat.num_generators());
    for (uint32_t g = 0; g < all.size(); ++g) all[g] = g;
    active = &all;
  }
  const auto n = static_cast<QubitId>(lat.num_qubits());
  FrameBits data{std::vector<uint8_t>(n, 0), std::vector<uint8_t>(n, 0)};
  for (const auto& [q, a] : frame.support()) {
    inject_pauli(data, q, static_cast<int>(a));
  }

  const std::size_t ng = active->size();
  std::vector<uint8_t> anc_x(ng, 0), anc_z(ng, 0);
  // CNOT slice alignment: north, west, east, south data qubit of each
  // generator (absent slots at the boundary are idle).
  std::vector<std::array<int, 4>> slots(ng, {-1, -1, -1, -1});
  for (std::size_t i = 0; i < ng; ++i) {
    const GeneratorDef& g = lat.generator((*active)[i]);
    const GridPos nb[4] = {{g.pos.row - 1, g.pos.col},
                           {g.pos.row, g.pos.col - 1},
                           {g.pos.row, g.pos.col + 1},
                           {g.pos.row + 1, g.pos.col}};
    for (int k = 0; k < 4; ++k) {
      if (lat.is_data_pos(nb[k])) {
        slots[i][k] = static_cast<int>(lat.qubit_at(nb[k]));
      }
    }
  }

  auto h_on_ancilla = [&](std::size_t i) {
    std::swap(anc_x[i], anc_z[i]);
    if (rng.bernoulli(prm.p)) {
      const int code = 1 + static_cast<int>(rng.next_below(3));
      if (code & 1) anc_x[i] ^= 1;
      if (code & 2) anc_z[i] ^= 1;
    }
  };

  // ancilla initialization to |0>, with an X flip at rate p
  for (std::size_t i = 0; i < ng; ++i) {
    if (rng.bernoulli(prm.p)) anc_x[i] ^= 1;
  }
  // leading Hadamard on X_s ancillas
  for (std::size_t i = 0; i < ng; ++i) {
    if (lat.generator((*active)[i]).kind == GenKind::Xs) h_on_ancilla(i);
  }
  for (int slice = 0; slice < 4; ++slice) {
    for (std::size_t i = 0; i < ng; ++i) {
      const int qs = slots[i][slice];
      if (qs < 0) continue;
      const auto q = static_cast<QubitId>(qs);
      if (lat.generator((*active)[i]).kind == GenKind::Zp) {
        // data controls, ancilla targets: X on data copies into ancilla,
        // Z on ancilla copies back onto data
        anc_x[i] ^= data.x[q];
        data.z[q] ^= anc_z[i];
      } else {
        // ancilla controls, data targets
        data.x[q] ^= anc_x[i];
        anc_z[i] ^= data.z[q];
      }
      if (rng.bernoulli(prm.p)) {
        const int k = 1 + static_cast<int>(rng.next_below(15));
        const int on_anc = k / 4;
        const int on_data = k % 4;
        if (on_anc & 1) anc_x[i] ^= 1;
        if (on_anc & 2) anc_z[i] ^= 1;
        if (on_data) inject_pauli(data, q, on_data);
      }
    }
  }
  for (std::size_t i = 0; i < ng; ++i) {
    if (lat.generator((*active)[i]).kind == GenKind::Xs) h_on_ancilla(i);
  }

  std::vector<int> reported(ng, +1);
  for (std::size_t i = 0; i < ng; ++i) {
    bool flipped = anc_x[i] != 0;
    if (rng.bernoulli(prm.p)) flipped = !flipped;
    reported[i] = flipped ? -1 : +1;
  }

  PauliOp out;
  for (QubitId q = 0; q < n; ++q) {
    const int code = (data.x[q] ? 1 : 0) | (data.z[q] ? 2 : 0);
    if (code) out.set_factor(q, static_cast<Axis>(code));
  }
  frame = out;
  return reported;
}

}  // namespace holosurf

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "holosurf/lattice.hpp"
#include "holosurf/pauli.hpp"
#include "holosurf/rng.hpp"
#include "holosurf/tableau.hpp"

namespace holosurf {

struct NoiseParams {
  double cbJ = 8.0;   // dimensionless c * beta * J
  double p = 1e-3;    // per-component circuit error probability
  long long m = 1;    // time steps between error-correction rounds
  double J = 1.0;
  uint64_t seed = 0;
};

// Thermal suppression class of a single-qubit error, set by the energy
// penalty 2J * (number of active generators it anticommutes with).
enum class GapClass : uint8_t { Unprotected, Bulk2J, Boundary4J };

const char* gap_class_name(GapClass c);
GapClass gap_class_from_name(const std::string& name);

struct ErrorEvent {
  long long step = 0;
  QubitId qubit = 0;
  Axis axis = Axis::X;
  GapClass gap_class = GapClass::Unprotected;
};

GapClass classify_gap(const Tableau& tab, QubitId qubit, Axis axis);
double gap_rate(GapClass c, const NoiseParams& prm);

// Independent per-qubit, per-step draws of sigma_x and sigma_z events at the
// class rate read off the current tableau. Y events arise as coincident X
// and Z draws.
std::vector<ErrorEvent> sample_thermal(const NoiseParams& prm,
                                       const Tableau& tab, long long steps,
                                       Rng& rng);

// Conjugates the error through history steps [from_step, to_step), in order.
PauliOp propagate(const PauliOp& error,
                  const std::vector<DeformationStep>& history,
                  std::size_t from_step, std::size_t to_step);

// CSV round trip for replay files: "step,qubit,axis,gap_class".
std::string events_to_csv(const std::vector<ErrorEvent>& events);
std::vector<ErrorEvent> events_from_csv(std::istream& in);

// One circuit-level measurement round of every generator in `active`
// (defaults to all), with the four fault mechanisms: ancilla init flip (p),
// imperfect Hadamards (X/Y/Z at p/3 each), imperfect CNOTs (each of the 15
// two-qubit Paulis at p/15), and measurement flips (p). CNOTs run in four
// interleaved slices in north-west-east-south order. Returns the reported
// signs and leaves the propagated data error in `frame`.
std::vector<int> syndrome_round(const Lattice& lat, PauliOp& frame,
                                const NoiseParams& prm, Rng& rng,
                                const std::vector<uint32_t>* active = nullptr);

}  // namespace holosurf

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holosurf/analysis.hpp"
#include "holosurf/distillation.hpp"
#include "holosurf/lattice.hpp"
#include "holosurf/pauli.hpp"
#include "holosurf/rng.hpp"
#include "holosurf/symplectic.hpp"

namespace holosurf {
namespace protocols {

// Full-rank stabilizer state over a handful of logical qubits, tracked as
// signed sparse Paulis.
class StabilizerEngine {
 public:
  explicit StabilizerEngine(std::size_t n);  // all |0>

  std::size_t num_qubits() const { return n_; }
  const std::vector<PauliOp>& rows() const { return rows_; }

  void apply_pauli_unitary(const PauliOp& p);  // flips anticommuting signs
  void apply_cnot(std::size_t control, std::size_t target);
  void apply_phase_gate(std::size_t q);  // X -> Y, Y -> -X, Z -> Z
  void apply_rx_gate(std::size_t q);     // Z -> -Y, Y -> Z, X -> X
  int measure(const PauliOp& obs, Rng& rng);  // +1/-1, collapses
  // Value when the observable is fixed by the state; nullopt otherwise.
  std::optional<int> deterministic_value(const PauliOp& obs) const;
  void reset_z(std::size_t q, int sign, Rng& rng);  // measure-and-flip
  void reset_x(std::size_t q, int sign, Rng& rng);

 private:
  std::size_t n_;
  std::vector<PauliOp> rows_;
};

struct MagicLabel {
  double theta = 0.0;       // (|0> + e^{i theta} |1>)/sqrt(2)
  double infidelity = 0.0;  // twirled flip probability estimate
};

struct LogicalQubit {
  CutKind type = CutKind::ZCut;
  std::optional<MagicLabel> magic;  // engaged when the engine cannot hold it
  bool pooled = false;              // available as a fresh ancilla
  bool contact = false;             // pair of holes touching
};

struct InjectionNoise {
  double theta_sigma = 0.0;  // pulse-angle jitter
  int d = 8;
  double p = 0.0;
  double cbJ = 12.0;
};

struct DistillOutcome {
  bool accepted = false;
  std::size_t output = 0;
};

// Logical register: every stabilizer-representable qubit lives in the
// engine; magic states are labels outside it. Logical X/Z corrections are
// applied in software (engine sign flips) and logged.
class LogicalRegister {
 public:
  LogicalRegister(std::size_t num_qubits, uint64_t seed);

  std::size_t size() const { return qubits_.size(); }
  const LogicalQubit& qubit(std::size_t q) const { return qubits_.at(q); }
  StabilizerEngine& engine() { return engine_; }
  const std::vector<std::string>& fixup_log() const { return fixup_log_; }

  // declare the prepared layout (all qubits exist from the start)
  void declare(std::size_t q, CutKind type, char label, bool pooled,
               bool contact = false);

  // pool bookkeeping
  std::size_t acquire_ancilla(CutKind type, char label,
                              bool require_contact = false);
  void release_ancilla(std::size_t q, char label);
  std::size_t pooled_count(CutKind type) const;

  // logical CNOT for all four type pairs; composites consume and recycle
  // the standard ancilla pair and may relabel which physical defect carries
  // an operand, so the (possibly new) indices are returned
  struct CnotResult {
    std::size_t control;
    std::size_t target;
  };
  CnotResult cnot(std::size_t control, std::size_t target);

  // first kind: contact measurement with majority vote; second kind: the
  // ancilla-coupled circuit. The qubit survives either way.
  int measure_logical(std::size_t q, Axis basis);
  // first-kind measurement fed through the shared-qubit majority vote with
  // measurement flips at rate p_flip
  int measure_logical_voted(std::size_t q, Axis basis, int shared_qubits,
                            double p_flip);

  void inject(std::size_t q, double theta,
              const InjectionNoise* noise = nullptr);

  DistillOutcome distill_y(const std::vector<std::size_t>& inputs);
  DistillOutcome distill_a(const std::vector<std::size_t>& inputs);

  void apply_s(std::size_t q);
  void apply_rx(std::size_t q);  // exp(-i pi/4 X_L)
  void apply_t(std::size_t q);
  void apply_h(std::size_t q);   // S * R_X(pi/2) * S

  // magic pool counters
  int y_pool() const { return y_pool_; }
  int a_pool() const { return a_pool_; }
  void stock_y(int count) { y_pool_ += count; }
  void stock_a(int count) { a_pool_ += count; }

  Rng& rng() { return rng_; }

 private:
  void log_fixup(const std::string& s) { fixup_log_.push_back(s); }
  void require_engine_backed(std::size_t q) const;
  DistillOutcome distill_common(const DistillationCode& code,
                                const std::vector<std::size_t>& inputs,
                                double target_theta);

  StabilizerEngine engine_;
  std::vector<LogicalQubit> qubits_;
  std::vector<std::string> fixup_log_;
  int y_pool_ = 0;
  int a_pool_ = 0;
  Rng rng_;
};

}  // namespace protocols
}  // namespace holosurf

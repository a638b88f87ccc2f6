#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holosurf/lattice.hpp"
#include "holosurf/pauli.hpp"
#include "holosurf/symplectic.hpp"

namespace holosurf {

// Monotone ramp 0 -> pi/4 with the first `smoothness` derivatives flat at
// both ends. Metadata only for the Clifford engine; the dense integrator
// and the timing analysis consume it.
struct ScheduleMeta {
  int smoothness = 2;
  double total_time = 1.0;
};

struct ToggleSpec {
  PauliOp op;  // bare generator
  bool on = false;
  // Signs are normally derived from the active group; initialization-time
  // toggles may declare one instead.
  std::optional<int> declared_sign;
};

// One unit of Hamiltonian change: toggles first (in list order), then a set
// of pairwise-commuting pi/4 rotations applied simultaneously.
struct DeformationStep {
  std::vector<ToggleSpec> toggles;
  std::vector<PauliOp> rotations;
  ScheduleMeta schedule;
};

struct GenRow {
  PauliOp op;   // bare, phase +1
  int sign = +1;
  bool active = true;
  // bookkeeping for sign validity of inactive rows
  uint64_t rotations_at_off = 0;
  uint64_t projections_at_off = 0;
};

struct LogicalPair {
  PauliOp x;
  PauliOp z;
  std::string tag;
};

struct ReducedOp {
  PauliOp rep;
  bool weight_certified = false;  // true when the search budget covered
                                  // every stabilizer subset
};

class Tableau {
 public:
  static Tableau from_lattice(const Lattice& lat);
  static Tableau from_generators(const std::vector<PauliOp>& gens,
                                 std::size_t num_qubits);

  std::size_t num_qubits() const { return n_; }
  const std::vector<GenRow>& rows() const { return rows_; }
  const GenRow& row(uint32_t i) const { return rows_.at(i); }
  std::size_t num_active() const;
  const std::vector<LogicalPair>& logicals() const { return logicals_; }
  LogicalPair& logical(std::size_t i) { return logicals_.at(i); }
  const std::vector<DeformationStep>& history() const { return history_; }
  uint64_t rotations_applied() const { return rotations_applied_; }

  // Conjugates every active generator and every logical by exp(i pi/4 q)
  // and records a single-rotation step in the history.
  void apply_rotation(const PauliOp& q);
  void execute(const DeformationStep& step);
  // Staged execution, for callers that validate between the toggle and
  // rotation phases.
  void apply_toggles(const std::vector<ToggleSpec>& toggles);
  void commit_rotations(const DeformationStep& step);

  uint32_t add_generator(const PauliOp& bare_op, int sign);
  void toggle_off(uint32_t row);
  // Reactivates / appends the generator. The sign comes from reducing the
  // operator over the active signed group (state-preserving toggle), from a
  // still-valid remembered sign, or from `declared_sign`; otherwise throws.
  uint32_t toggle_on(const ToggleSpec& spec);
  std::optional<uint32_t> find_row(const PauliOp& bare_op) const;

  std::size_t register_logical(const PauliOp& x, const PauliOp& z,
                               std::string tag);
  void remove_logical(std::size_t index);

  // Number of active generators anticommuting with q.
  int anticommute_count(const PauliOp& q) const;

  // Canonical coset representative of p modulo the active signed stabilizer
  // group, then weight minimization within the search budget.
  ReducedOp reduce_mod_stabilizer(const PauliOp& p) const;
  // True iff a and b act identically on the stabilized subspace, i.e.
  // b^dag a is exactly (sign included) in the active signed group.
  bool equivalent_mod_stabilizer(const PauliOp& a, const PauliOp& b) const;
  // Shortest equivalent form found within the budget (no normalizer
  // precondition; used to express effective errors).
  PauliOp shorten_mod_stabilizer(const PauliOp& p) const;

  std::size_t active_rank() const;
  std::size_t max_active_weight() const;
  // Echelonized signed presentation of the active group; equal groups (with
  // equal recorded eigenvalues) yield equal row lists.
  std::vector<std::string> canonical_group_rows() const;
  // Pairwise commutation of active generators, logical pair algebra, and
  // the weight bound. Throws std::logic_error on violation.
  void check_invariants(std::size_t max_weight = 0) const;

  // Energy of an eigenspace label relative to the ground space, in units
  // of J: 2 * (number of -1 entries).
  static double label_energy(const std::vector<int>& s, double J = 1.0);

  // Exhaustive-minimization budget: subsets are enumerated only when
  // 2^active_rank <= budget.
  void set_weight_search_budget(std::size_t budget) { budget_ = budget; }

 private:
  const StabilizerBasis& signed_basis() const;
  BitPauli greedy_shorten(BitPauli v) const;
  void invalidate_basis() { basis_.reset(); }

  std::size_t n_ = 0;
  std::vector<GenRow> rows_;
  std::vector<LogicalPair> logicals_;
  std::vector<DeformationStep> history_;
  std::vector<PauliOp> rotation_log_;
  uint64_t rotations_applied_ = 0;
  uint64_t projections_applied_ = 0;
  std::size_t budget_ = 1u << 16;
  mutable std::optional<StabilizerBasis> basis_;
};

}  // namespace holosurf

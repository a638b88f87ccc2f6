#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "holosurf/lattice.hpp"
#include "holosurf/pauli.hpp"
#include "holosurf/tableau.hpp"

namespace holosurf {

struct ValidityReport {
  int odd_count = 0;
  bool valid = false;
};

// Number of active generators anticommuting with q; the deformation is
// adiabatically safe only when that count is odd.
ValidityReport check_validity(const Tableau& tab, const PauliOp& q);

// Simultaneous application is allowed when the rotations pairwise commute,
// their anticommuting generator sets are pairwise disjoint, and each set has
// odd size.
bool check_parallel(const Tableau& tab, const std::vector<PauliOp>& qs);

enum class Direction : uint8_t { Up, Down, Left, Right };
GridPos direction_delta(Direction d);  // generator-lattice step (2 grid units)

struct BraidLeg {
  Direction dir;
  int units = 0;
};

struct BraidPath {
  std::vector<BraidLeg> legs;
  bool closed() const;
};

struct BraidReport {
  bool x_control = false;  // X_c -> X_c X_t
  bool x_target = false;   // X_t -> X_t
  bool z_control = false;  // Z_c -> Z_c
  bool z_target = false;   // Z_t -> Z_c Z_t
  bool all() const { return x_control && x_target && z_control && z_target; }
};

// Bookkeeping for one hole: its rectangle of absorbed generator positions
// and the spanning tree of interior edges that carry single-qubit terms.
struct HoleState {
  HoleRegion region;
  std::set<QubitId> tree;
};

struct TrackedDefect {
  CutKind kind;
  std::array<HoleState, 2> holes;
  std::size_t logical_index = 0;
  std::string init_label;
};

// Binds a lattice and a tableau and drives the canonical deformation
// schedules. Every emitted step is validated (check_parallel) and executed
// on the tableau; geometry is updated alongside.
class DeformationContext {
 public:
  DeformationContext(const Lattice& lat, Tableau& tab);

  const Lattice& lattice() const { return *lat_; }
  Tableau& tableau() { return *tab_; }

  std::size_t create_defect(CutKind kind, GridPos pos1, GridPos pos2);
  // Inverse of creation for still-minimal holes: re-activates both
  // generators and retires the defect's logical pair.
  void annihilate_defect(std::size_t i);
  std::size_t num_defects() const { return defects_.size(); }
  const TrackedDefect& defect(std::size_t i) const { return defects_.at(i); }
  DefectQubit defect_snapshot(std::size_t i) const;

  // Square-hole enlargement to ring perimeter d (d multiple of 4): the strip
  // grows downward first, then whole columns are absorbed rightward in
  // parallel steps.
  std::vector<DeformationStep> enlarge_hole(std::size_t defect, int hole,
                                            int target_perimeter);
  // Reverse of enlargement: columns contract leftward, then the strip
  // contracts upward, restoring the original stabilizer group and signs.
  std::vector<DeformationStep> shrink_hole(std::size_t defect, int hole,
                                           int target_perimeter);
  std::vector<DeformationStep> grow_rect(std::size_t defect, int hole,
                                         int width, int height);
  std::vector<DeformationStep> shrink_rect(std::size_t defect, int hole,
                                           int width, int height);
  std::vector<DeformationStep> move_hole(std::size_t defect, int hole,
                                         Direction dir, int units,
                                         bool two_phase = false);

  struct BraidResult {
    BraidPath path;
    std::vector<DeformationStep> steps;
    BraidReport report;
  };
  // Drags one hole of the Z-cut control around the X-cut target's first
  // hole and checks the CNOT conjugation table.
  BraidResult braid(std::size_t control, std::size_t target);
  // Executes an explicit closed loop with hole 0 of `defect`; reports the
  // logical mappings the same way.
  BraidResult braid_loop(std::size_t defect, std::size_t other,
                         const BraidPath& path);

 private:
  Axis term_axis(CutKind kind) const;
  GenKind gen_kind(CutKind kind) const;
  QubitId edge_between(GridPos a, GridPos b) const;
  std::set<QubitId> comb_tree(const HoleRegion& region, Direction dir) const;
  std::vector<ToggleSpec> retree(const HoleState& hole,
                                 const std::set<QubitId>& target, GenKind kind,
                                 Axis ax) const;
  void ensure_clear(std::size_t defect, int hole, const HoleRegion& next) const;
  void execute_step(DeformationStep step, std::vector<DeformationStep>& out);
  std::vector<DeformationStep> unit_move(std::size_t defect, int hole,
                                         Direction dir, bool two_phase);
  BraidReport mapping_report(std::size_t control, std::size_t target,
                             const LogicalPair& c0, const LogicalPair& t0) const;

  const Lattice* lat_;
  Tableau* tab_;
  std::vector<TrackedDefect> defects_;
};

}  // namespace holosurf

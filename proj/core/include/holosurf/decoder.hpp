#pragma once

#include <cstdint>
#include <vector>

#include "holosurf/lattice.hpp"
#include "holosurf/matching.hpp"
#include "holosurf/pauli.hpp"

namespace holosurf {

// Space-time record of reported generator signs, one vector per round,
// indexed like Lattice::generators().
struct SyndromeHistory {
  std::vector<std::vector<int>> rounds;
};

struct DetectionEvent {
  uint32_t gen = 0;
  std::size_t round = 0;
};

// A detection event marks every (generator, round) whose reported sign
// differs from the previous round; the first round is compared against the
// all +1 initialization.
std::vector<DetectionEvent> detection_events(const SyndromeHistory& h);

class Decoder {
 public:
  explicit Decoder(const Lattice& lat);

  struct KindDecode {
    std::vector<DetectionEvent> events;
    MatchInstance instance;
    Matching matching;
    PauliOp correction;
  };

  // Builds the space-time matching instance for one string species: pair
  // weights are spatial hop distance plus round distance, boundary weights
  // the spatial distance to the nearer terminating boundary.
  KindDecode decode_kind(StringKind kind,
                         const std::vector<DetectionEvent>& events) const;

  struct Result {
    PauliOp correction;
    PauliOp residual;  // frame times correction
    bool failure_x = false;  // residual acts as logical X (flips logical_z)
    bool failure_z = false;  // residual acts as logical Z
    KindDecode x_side;       // sigma_x corrections (plaquette events)
    KindDecode z_side;       // sigma_z corrections (vertex events)
  };

  // Full decode of a syndrome history against the true accumulated frame.
  Result decide_and_correct(const SyndromeHistory& h, const PauliOp& frame,
                            const PauliOp& logical_x,
                            const PauliOp& logical_z) const;

  int spatial_distance(StringKind kind, uint32_t gen_a, uint32_t gen_b) const;

 private:
  const Lattice* lat_;
  StringGraph zstring_;
  StringGraph xstring_;
  std::vector<std::vector<int>> zdist_;  // node -> distances
  std::vector<std::vector<int>> xdist_;

  const StringGraph& graph(StringKind k) const {
    return k == StringKind::ZString ? zstring_ : xstring_;
  }
  const std::vector<std::vector<int>>& dists(StringKind k) const {
    return k == StringKind::ZString ? zdist_ : xdist_;
  }
};

struct MovementVote {
  bool trigger_full_ec = false;
  std::vector<std::size_t> flagged_rows;
};

// Majority vote over the measured expansion strip: `rows` holds d/4 rows of
// d/8 single-qubit outcomes. A row flags when at least half its outcomes
// are -1 (ties flag, so a clean miss needs floor(d/16)+1 flips).
MovementVote movement_vote(const std::vector<std::vector<int>>& rows, int d);

// Majority sign of the shared-qubit measurements; ties are rejected.
int contact_vote(const std::vector<int>& outcomes);

}  // namespace holosurf

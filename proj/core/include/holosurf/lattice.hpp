#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holosurf/pauli.hpp"

namespace holosurf {

// Positions live on a (2L-1)x(2L-1) grid:
//   r+c even            -> data qubit (edge of the underlying square lattice)
//   r even, c odd       -> plaquette generator Z_p
//   r odd,  c even      -> vertex generator X_s
// Boundary layout: X boundaries left/right (3-body X_s there), Z boundaries
// top/bottom (3-body Z_p there).
struct GridPos {
  int row = 0;
  int col = 0;
  bool operator==(const GridPos&) const = default;
  auto operator<=>(const GridPos&) const = default;
};

enum class GenKind : uint8_t { Xs, Zp };
enum class CutKind : uint8_t { XCut, ZCut };

// Pauli string species. Z-strings flip X_s generators and terminate on the
// top/bottom Z boundaries; X-strings flip Z_p and terminate on left/right.
enum class StringKind : uint8_t { ZString, XString };

struct GeneratorDef {
  GenKind kind;
  GridPos pos;
  std::vector<QubitId> support;  // north, west, east, south order
  PauliOp pauli() const;
};

// Rectangle of generator positions, in generator-lattice steps (grid stride 2).
struct HoleRegion {
  GridPos anchor;  // top-left generator position
  int width = 1;
  int height = 1;
  bool contains(GridPos p) const;
  std::vector<GridPos> positions() const;
  int perimeter() const { return 2 * (width + height); }
};

struct DefectQubit {
  CutKind kind;
  std::array<HoleRegion, 2> holes;
  int distance = 4;            // current min logical weight bound
  PauliOp logical_x;
  PauliOp logical_z;
  std::string init_label;      // "+" for X-cut, "0" for Z-cut at creation
};

class Lattice {
 public:
  static Lattice build(int L);

  int L() const { return L_; }
  int grid_extent() const { return 2 * L_ - 1; }
  std::size_t num_qubits() const { return qubit_pos_.size(); }
  std::size_t num_generators() const { return gens_.size(); }

  bool in_grid(GridPos p) const;
  bool is_data_pos(GridPos p) const;
  bool is_generator_pos(GridPos p) const;

  QubitId qubit_at(GridPos p) const;            // throws on non-data position
  GridPos qubit_pos(QubitId q) const { return qubit_pos_.at(q); }
  const std::vector<GeneratorDef>& generators() const { return gens_; }
  const GeneratorDef& generator(uint32_t g) const { return gens_.at(g); }
  uint32_t generator_at(GridPos p) const;       // throws on non-generator position
  std::optional<uint32_t> try_generator_at(GridPos p) const;
  // Generators of the given kind containing qubit q (one or two).
  const std::vector<uint32_t>& generators_on(QubitId q) const;

  // sigma_x / sigma_z chain joining two same-kind generator positions along
  // an axis-aligned L-shaped path (row leg then column leg).
  PauliOp connecting_chain(GridPos a, GridPos b, Axis axis) const;

 private:
  int L_ = 0;
  std::vector<GridPos> qubit_pos_;
  std::vector<int> grid_qubit_;   // grid index -> qubit id or -1
  std::vector<GeneratorDef> gens_;
  std::vector<int> grid_gen_;     // grid index -> generator index or -1
  std::vector<std::vector<uint32_t>> qubit_gens_;

  int grid_index(GridPos p) const { return p.row * grid_extent() + p.col; }
};

// Connectivity graph of one string species: nodes are the terminating
// generator kind, edges are data qubits, plus two virtual boundary nodes.
class StringGraph {
 public:
  static StringGraph build(const Lattice& lat, StringKind kind);

  StringKind kind() const { return kind_; }
  // Node count excluding the two virtual boundary nodes.
  uint32_t num_real_nodes() const { return num_real_; }
  uint32_t virtual_a() const { return num_real_; }      // top or left
  uint32_t virtual_b() const { return num_real_ + 1; }  // bottom or right
  uint32_t node_of_generator(uint32_t gen_index) const;
  uint32_t generator_of_node(uint32_t node) const { return node_gen_.at(node); }

  struct Edge {
    uint32_t to;
    QubitId qubit;
  };
  const std::vector<Edge>& edges(uint32_t node) const { return adj_.at(node); }

  // BFS hop distances from a set of source nodes (unit edge weights).
  std::vector<int> distances(const std::vector<uint32_t>& sources) const;
  // Shortest path between nodes; returns the data qubits along it.
  std::vector<QubitId> shortest_path(uint32_t from, uint32_t to) const;

  // Minimum-weight closed string with odd winding around the hole, computed
  // by a two-sheet search against a cut ray that avoids `avoid`.
  int min_enclosing_loop(const Lattice& lat, const HoleRegion& hole,
                         const HoleRegion& avoid) const;

 private:
  StringKind kind_;
  uint32_t num_real_ = 0;
  std::vector<std::vector<Edge>> adj_;
  std::vector<uint32_t> node_gen_;
  std::vector<int> gen_node_;  // generator index -> node or -1
};

// Turns off the two same-kind generators and assembles the defect logicals:
// the ring around the first hole and the chain joining the holes. Purely
// geometric; toggling the tableau is done by the deformation layer.
DefectQubit create_double_cut(const Lattice& lat, CutKind kind, GridPos pos1,
                              GridPos pos2);

struct LogicalWeights {
  int ring;   // min weight in the ring logical's coset
  int chain;  // min weight in the chain logical's coset
  int min() const { return ring < chain ? ring : chain; }
};

// Exact minimum weights over coset representatives modulo the stabilizers
// that remain active when only this defect's holes are cut.
LogicalWeights logical_weights(const Lattice& lat, const DefectQubit& dq);
int min_logical_weight(const Lattice& lat, const DefectQubit& dq);

}  // namespace holosurf

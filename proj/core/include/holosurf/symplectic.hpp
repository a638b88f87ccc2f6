#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "holosurf/pauli.hpp"

namespace holosurf {

// Dense bit-pair Pauli over a fixed qubit universe [0, n). Internal engine
// behind Gaussian elimination and coset reduction; the public contract stays
// sparse (PauliOp).
struct BitPauli {
  std::vector<uint64_t> x, z;
  int phase_pow = 0;  // exponent of i

  static BitPauli identity(std::size_t n);
  static BitPauli from(const PauliOp& p, std::size_t n);
  PauliOp to_pauli() const;

  std::size_t num_qubits() const { return 64 * x.size(); }
  bool get_x(std::size_t q) const { return (x[q >> 6] >> (q & 63)) & 1; }
  bool get_z(std::size_t q) const { return (z[q >> 6] >> (q & 63)) & 1; }
  bool is_identity_up_to_phase() const;
  bool commutes_with(const BitPauli& rhs) const;
  void mul(const BitPauli& rhs);  // *this = *this * rhs, exact phase
  std::size_t weight() const;
  bool operator==(const BitPauli&) const = default;
};

// Echelonized signed Pauli basis with a fixed pivot order (x-bit of qubit 0,
// z-bit of qubit 0, x-bit of qubit 1, ...). Rows are stored reduced, so
// reduce() yields a canonical coset representative.
class StabilizerBasis {
 public:
  explicit StabilizerBasis(std::size_t n) : n_(n) {}

  // Adds p to the span. Returns false if p was already in the span (up to
  // phase). Throws if p reduces to a nontrivially-phased identity, which
  // would make the group inconsistent.
  bool add(const BitPauli& p);

  BitPauli reduce(BitPauli p) const;
  // True iff p is exactly (sign included) a product of added elements.
  bool contains(const BitPauli& p) const;
  std::size_t rank() const { return rows_.size(); }
  const std::vector<BitPauli>& rows() const { return rows_; }

 private:
  static int pivot_of(const BitPauli& p);

  std::size_t n_;
  std::vector<BitPauli> rows_;
  std::vector<int> pivots_;
};

// GF(2) symplectic rank of a set of Pauli operators (phases ignored).
std::size_t symplectic_rank(const std::vector<PauliOp>& ops, std::size_t n);

}  // namespace holosurf

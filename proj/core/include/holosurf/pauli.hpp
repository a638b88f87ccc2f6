#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace holosurf {

using QubitId = uint32_t;

// Single-qubit axis, encoded as (x-bit, z-bit) so that composition is XOR.
enum class Axis : uint8_t { X = 1, Z = 2, Y = 3 };

char axis_char(Axis a);
Axis axis_from_char(char c);

// Sparse signed Pauli operator: i^phase_pow * prod_q sigma_{axis(q), q}.
// Absent qubits are identity; phase_pow is exact over {1, i, -1, -i}.
// Hermitian iff phase_pow is even.
class PauliOp {
 public:
  using Support = std::map<QubitId, Axis>;

  PauliOp() = default;
  static PauliOp identity() { return PauliOp(); }
  static PauliOp single(QubitId q, Axis a);
  static PauliOp make(std::initializer_list<std::pair<QubitId, Axis>> factors,
                      int phase_pow = 0);

  const Support& support() const { return support_; }
  int phase_pow() const { return phase_pow_; }
  std::size_t weight() const { return support_.size(); }
  bool is_identity() const { return support_.empty() && phase_pow_ == 0; }
  bool is_identity_up_to_phase() const { return support_.empty(); }
  bool is_hermitian() const { return (phase_pow_ & 1) == 0; }
  // +1 or -1; only meaningful for Hermitian operators.
  int sign() const { return phase_pow_ == 0 ? +1 : -1; }

  Axis axis_at(QubitId q) const;      // throws if q not in support
  bool has_qubit(QubitId q) const { return support_.count(q) != 0; }

  void set_factor(QubitId q, Axis a) { support_[q] = a; }
  void mul_phase(int pow) { phase_pow_ = (phase_pow_ + pow) & 3; }
  PauliOp with_phase(int phase_pow) const;
  // Same operator with the phase stripped to +1.
  PauliOp bare() const;

  PauliOp operator*(const PauliOp& rhs) const;
  bool commutes_with(const PauliOp& rhs) const;

  bool operator==(const PauliOp& rhs) const {
    return phase_pow_ == rhs.phase_pow_ && support_ == rhs.support_;
  }
  bool operator!=(const PauliOp& rhs) const { return !(*this == rhs); }

  // Text form "<sign><i?> <factors>": e.g. "+ X3 Z17", "-i Y2", "+ I".
  std::string str() const;
  static PauliOp parse(const std::string& text);

 private:
  Support support_;
  uint8_t phase_pow_ = 0;
};

bool commutes(const PauliOp& a, const PauliOp& b);

// Image g p g^dag for g = exp(i pi/4 q): p itself when [p, q] = 0, else
// i q p. Rejects non-Hermitian q. Preserves Hermiticity and commutation
// relations; applying it four times is the identity.
PauliOp conjugate_by_rotation(const PauliOp& p, const PauliOp& q);

// Rotation generator that maps generator `from` onto `to`: Q = i from to.
// Requires {from, to} = 0; then conjugation by exp(i pi/4 Q) sends
// from -> +to (and to -> -from).
PauliOp rotation_mapping(const PauliOp& from, const PauliOp& to);

}  // namespace holosurf

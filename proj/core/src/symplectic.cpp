#include "holosurf/symplectic.hpp"

#include <bit>
#include <stdexcept>

namespace holosurf {

BitPauli BitPauli::identity(std::size_t n) {
  BitPauli p;
  const std::size_t words = (n + 63) / 64;
  p.x.assign(words, 0);
  p.z.assign(words, 0);
  return p;
}

BitPauli BitPauli::from(const PauliOp& op, std::size_t n) {
  BitPauli p = identity(n);
  p.phase_pow = op.phase_pow();
  for (const auto& [q, a] : op.support()) {
    if (q >= n) throw std::out_of_range("qubit outside universe");
    const auto bits = static_cast<uint8_t>(a);
    if (bits & 1) p.x[q >> 6] |= 1ULL << (q & 63);
    if (bits & 2) p.z[q >> 6] |= 1ULL << (q & 63);
  }
  return p;
}

PauliOp BitPauli::to_pauli() const {
  PauliOp out;
  for (std::size_t w = 0; w < x.size(); ++w) {
    uint64_t bits = x[w] | z[w];
    while (bits) {
      const int b = std::countr_zero(bits);
      bits &= bits - 1;
      const std::size_t q = 64 * w + static_cast<std::size_t>(b);
      const uint8_t ax = static_cast<uint8_t>((get_x(q) ? 1 : 0) | (get_z(q) ? 2 : 0));
      out.set_factor(static_cast<QubitId>(q), static_cast<Axis>(ax));
    }
  }
  out.mul_phase(phase_pow);
  return out;
}

bool BitPauli::is_identity_up_to_phase() const {
  for (std::size_t w = 0; w < x.size(); ++w) {
    if (x[w] | z[w]) return false;
  }
  return true;
}

bool BitPauli::commutes_with(const BitPauli& rhs) const {
  uint64_t parity = 0;
  for (std::size_t w = 0; w < x.size(); ++w) {
    parity ^= std::popcount((x[w] & rhs.z[w]) ^ (z[w] & rhs.x[w])) & 1u;
  }
  return parity == 0;
}

void BitPauli::mul(const BitPauli& rhs) {
  int plus = 0, minus = 0;
  for (std::size_t w = 0; w < x.size(); ++w) {
    const uint64_t x1 = x[w], z1 = z[w], x2 = rhs.x[w], z2 = rhs.z[w];
    // +i for the cyclic single-qubit products X*Y, Y*Z, Z*X; -i reversed.
    const uint64_t p1 = (x1 & ~z1) & (x2 & z2);    // X*Y
    const uint64_t p2 = (x1 & z1) & (~x2 & z2);    // Y*Z
    const uint64_t p3 = (~x1 & z1) & (x2 & ~z2);   // Z*X
    const uint64_t m1 = (x1 & z1) & (x2 & ~z2);    // Y*X
    const uint64_t m2 = (~x1 & z1) & (x2 & z2);    // Z*Y
    const uint64_t m3 = (x1 & ~z1) & (~x2 & z2);   // X*Z
    plus += std::popcount(p1) + std::popcount(p2) + std::popcount(p3);
    minus += std::popcount(m1) + std::popcount(m2) + std::popcount(m3);
    x[w] ^= x2;
    z[w] ^= z2;
  }
  phase_pow = ((phase_pow + rhs.phase_pow + plus - minus) % 4 + 4) % 4;
}

std::size_t BitPauli::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    w += static_cast<std::size_t>(std::popcount(x[i] | z[i]));
  }
  return w;
}

int StabilizerBasis::pivot_of(const BitPauli& p) {
  for (std::size_t w = 0; w < p.x.size(); ++w) {
    const uint64_t any = p.x[w] | p.z[w];
    if (!any) continue;
    for (std::size_t q = 64 * w; q < 64 * (w + 1); ++q) {
      if (p.get_x(q)) return static_cast<int>(2 * q);
      if (p.get_z(q)) return static_cast<int>(2 * q + 1);
    }
  }
  return -1;
}

bool StabilizerBasis::add(const BitPauli& p) {
  BitPauli r = reduce(p);
  const int piv = pivot_of(r);
  if (piv < 0) {
    if (r.phase_pow != 0) {
      throw std::invalid_argument("inconsistent sign: element already in span");
    }
    return false;
  }
  // Keep echelon form: clear this pivot from earlier rows.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto q = static_cast<std::size_t>(piv / 2);
    const bool hit = (piv % 2 == 0) ? rows_[i].get_x(q) : rows_[i].get_z(q);
    if (hit) rows_[i].mul(r);
  }
  std::size_t at = 0;
  while (at < pivots_.size() && pivots_[at] < piv) ++at;
  rows_.insert(rows_.begin() + static_cast<long>(at), std::move(r));
  pivots_.insert(pivots_.begin() + static_cast<long>(at), piv);
  return true;
}

BitPauli StabilizerBasis::reduce(BitPauli p) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto q = static_cast<std::size_t>(pivots_[i] / 2);
    const bool hit = (pivots_[i] % 2 == 0) ? p.get_x(q) : p.get_z(q);
    if (hit) p.mul(rows_[i]);
  }
  return p;
}

bool StabilizerBasis::contains(const BitPauli& p) const {
  const BitPauli r = reduce(p);
  return r.is_identity_up_to_phase() && r.phase_pow == 0;
}

std::size_t symplectic_rank(const std::vector<PauliOp>& ops, std::size_t n) {
  StabilizerBasis basis(n);
  for (const auto& op : ops) {
    BitPauli b = BitPauli::from(op, n);
    b.phase_pow = 0;
    try {
      basis.add(b);
    } catch (const std::invalid_argument&) {
      // phase-inconsistent duplicates still do not raise the rank
    }
  }
  return basis.rank();
}

}  // namespace holosurf

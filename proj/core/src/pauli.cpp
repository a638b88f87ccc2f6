#include "holosurf/pauli.hpp"

#include <sstream>

namespace holosurf {

char axis_char(Axis a) {
  switch (a) {
    case Axis::X: return 'X';
    case Axis::Y: return 'Y';
    case Axis::Z: return 'Z';
  }
  throw std::logic_error("bad axis");
}

Axis axis_from_char(char c) {
  switch (c) {
    case 'X': return Axis::X;
    case 'Y': return Axis::Y;
    case 'Z': return Axis::Z;
    default: throw std::invalid_argument("bad axis char");
  }
}

namespace {

// i-exponent of sigma_a * sigma_b (single qubit, both non-identity).
// Cyclic products X*Y, Y*Z, Z*X pick up +i; the reversed order -i.
int axis_mul_phase(Axis a, Axis b) {
  if (a == b) return 0;
  if ((a == Axis::X && b == Axis::Y) || (a == Axis::Y && b == Axis::Z) ||
      (a == Axis::Z && b == Axis::X)) {
    return 1;
  }
  return 3;
}

}  // namespace

PauliOp PauliOp::single(QubitId q, Axis a) {
  PauliOp p;
  p.support_[q] = a;
  return p;
}

PauliOp PauliOp::make(std::initializer_list<std::pair<QubitId, Axis>> factors,
                      int phase_pow) {
  PauliOp p;
  for (const auto& [q, a] : factors) {
    if (p.support_.count(q)) throw std::invalid_argument("duplicate qubit");
    p.support_[q] = a;
  }
  p.phase_pow_ = static_cast<uint8_t>(phase_pow & 3);
  return p;
}

Axis PauliOp::axis_at(QubitId q) const {
  auto it = support_.find(q);
  if (it == support_.end()) throw std::out_of_range("qubit not in support");
  return it->second;
}

PauliOp PauliOp::with_phase(int phase_pow) const {
  PauliOp p = *this;
  p.phase_pow_ = static_cast<uint8_t>(phase_pow & 3);
  return p;
}

PauliOp PauliOp::bare() const { return with_phase(0); }

PauliOp PauliOp::operator*(const PauliOp& rhs) const {
  PauliOp out;
  int phase = phase_pow_ + rhs.phase_pow_;
  auto it = support_.begin();
  auto jt = rhs.support_.begin();
  while (it != support_.end() || jt != rhs.support_.end()) {
    if (jt == rhs.support_.end() ||
        (it != support_.end() && it->first < jt->first)) {
      out.support_.insert(out.support_.end(), *it);
      ++it;
    } else if (it == support_.end() || jt->first < it->first) {
      out.support_.insert(out.support_.end(), *jt);
      ++jt;
    } else {
      phase += axis_mul_phase(it->second, jt->second);
      const auto merged = static_cast<uint8_t>(it->second) ^
                          static_cast<uint8_t>(jt->second);
      if (merged != 0) {
        out.support_.emplace_hint(out.support_.end(), it->first,
                                  static_cast<Axis>(merged));
      }
      ++it;
      ++jt;
    }
  }
  out.phase_pow_ = static_cast<uint8_t>(phase & 3);
  return out;
}

bool PauliOp::commutes_with(const PauliOp& rhs) const {
  // Walk the smaller support against the other map.
  const PauliOp* small = this;
  const PauliOp* big = &rhs;
  if (big->support_.size() < small->support_.size()) std::swap(small, big);
  int anti = 0;
  for (const auto& [q, a] : small->support_) {
    auto it = big->support_.find(q);
    if (it != big->support_.end() && it->second != a) ++anti;
  }
  return (anti & 1) == 0;
}

bool commutes(const PauliOp& a, const PauliOp& b) { return a.commutes_with(b); }

PauliOp conjugate_by_rotation(const PauliOp& p, const PauliOp& q) {
  if (!q.is_hermitian()) {
    throw std::invalid_argument("rotation generator must be Hermitian");
  }
  if (p.commutes_with(q)) return p;
  PauliOp out = q * p;
  out.mul_phase(1);
  return out;
}

PauliOp rotation_mapping(const PauliOp& from, const PauliOp& to) {
  if (from.commutes_with(to)) {
    throw std::invalid_argument("rotation endpoints must anticommute");
  }
  PauliOp q = from * to;
  q.mul_phase(1);
  return q;
}

std::string PauliOp::str() const {
  static const char* kPhase[4] = {"+", "+i", "-", "-i"};
  std::ostringstream os;
  os << kPhase[phase_pow_];
  if (support_.empty()) {
    os << " I";
    return os.str();
  }
  for (const auto& [q, a] : support_) os << ' ' << axis_char(a) << q;
  return os.str();
}

PauliOp PauliOp::parse(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  if (!(is >> tok)) throw std::invalid_argument("empty pauli text");
  PauliOp p;
  if (tok == "+") {
    p.phase_pow_ = 0;
  } else if (tok == "+i") {
    p.phase_pow_ = 1;
  } else if (tok == "-") {
    p.phase_pow_ = 2;
  } else if (tok == "-i") {
    p.phase_pow_ = 3;
  } else {
    throw std::invalid_argument("bad phase token: " + tok);
  }
  while (is >> tok) {
    if (tok == "I") continue;
    if (tok.size() < 2) throw std::invalid_argument("bad factor: " + tok);
    const Axis a = axis_from_char(tok[0]);
    const QubitId q = static_cast<QubitId>(std::stoul(tok.substr(1)));
    if (p.support_.count(q)) throw std::invalid_argument("duplicate qubit");
    p.support_[q] = a;
  }
  return p;
}

}  // namespace holosurf

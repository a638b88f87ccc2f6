#include "holosurf/tableau.hpp"

#include <algorithm>
#include <stdexcept>

namespace holosurf {

Tableau Tableau::from_lattice(const Lattice& lat) {
  Tableau tab;
  tab.n_ = lat.num_qubits();
  tab.rows_.reserve(lat.num_generators());
  for (const auto& g : lat.generators()) {
    tab.rows_.push_back(GenRow{g.pauli(), +1, true, 0, true});
  }
  return tab;
}

Tableau Tableau::from_generators(const std::vector<PauliOp>& gens,
                                 std::size_t num_qubits) {
  Tableau tab;
  tab.n_ = num_qubits;
  for (const auto& g : gens) {
    if (!g.is_hermitian()) throw std::invalid_argument("generator not Hermitian");
    tab.rows_.push_back(GenRow{g.bare(), g.sign(), true, 0, true});
  }
  return tab;
}

std::size_t Tableau::num_active() const {
  std::size_t k = 0;
  for (const auto& r : rows_) k += r.active ? 1 : 0;
  return k;
}

void Tableau::apply_rotation(const PauliOp& q) {
  if (!q.is_hermitian()) {
    throw std::invalid_argument("rotation generator must be Hermitian");
  }
  for (auto& r : rows_) {
    if (!r.active) continue;
    if (!r.op.commutes_with(q)) {
      PauliOp img = conjugate_by_rotation(r.op, q);
      r.sign *= img.sign();
      r.op = img.bare();
    }
  }
  for (auto& l : logicals_) {
    l.x = conjugate_by_rotation(l.x, q);
    l.z = conjugate_by_rotation(l.z, q);
  }
  ++rotations_applied_;
  rotation_log_.push_back(q);
  DeformationStep step;
  step.rotations.push_back(q);
  history_.push_back(std::move(step));
  invalidate_basis();
}

void Tableau::apply_toggles(const std::vector<ToggleSpec>& toggles) {
  for (const auto& t : toggles) {
    if (t.on) {
      toggle_on(t);
    } else {
      bool done = false;
      for (uint32_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].active && rows_[i].op == t.op.bare()) {
          toggle_off(i);
          done = true;
          break;
        }
      }
      if (!done) throw std::invalid_argument("toggle-off target not active");
    }
  }
}

void Tableau::commit_rotations(const DeformationStep& step) {
  const std::size_t history_mark = history_.size();
  for (const auto& q : step.rotations) apply_rotation(q);
  // collapse the per-rotation records into the executed step
  history_.resize(history_mark);
  history_.push_back(step);
  // Rotations can re-create a generator whose original row was parked
  // inactive; the stale copy is then redundant.
  for (std::size_t i = rows_.size(); i-- > 0;) {
    if (rows_[i].active) continue;
    for (const auto& r : rows_) {
      if (r.active && r.op == rows_[i].op) {
        rows_.erase(rows_.begin() + static_cast<long>(i));
        break;
      }
    }
  }
}

void Tableau::execute(const DeformationStep& step) {
  apply_toggles(step.toggles);
  commit_rotations(step);
}

uint32_t Tableau::add_generator(const PauliOp& bare_op, int sign) {
  if (!bare_op.is_hermitian() || bare_op.phase_pow() != 0) {
    throw std::invalid_argument("generator rows are stored bare");
  }
  rows_.push_back(GenRow{bare_op, sign, true, 0, true});
  if (basis_) {
    BitPauli b = BitPauli::from(bare_op, n_);
    if (sign < 0) b.phase_pow = 2;
    try {
      basis_->add(b);
    } catch (const std::invalid_argument&) {
      throw std::logic_error("new generator contradicts active group sign");
    }
  }
  return static_cast<uint32_t>(rows_.size() - 1);
}

void Tableau::toggle_off(uint32_t row) {
  GenRow& r = rows_.at(row);
  if (!r.active) throw std::invalid_argument("generator already inactive");
  r.active = false;
  r.rotations_at_off = rotations_applied_;
  r.projections_at_off = projections_applied_;
  invalidate_basis();
}

uint32_t Tableau::toggle_on(const ToggleSpec& spec) {
  const PauliOp op = spec.op.bare();
  if (auto existing = find_row(op); existing && rows_[*existing].active) {
    throw std::invalid_argument("generator already active");
  }
  for (const auto& r : rows_) {
    if (r.active && !r.op.commutes_with(op)) {
      throw std::invalid_argument("toggle-on violates commutation with active group");
    }
  }
  for (const auto& l : logicals_) {
    if (!l.x.commutes_with(op) || !l.z.commutes_with(op)) {
      throw std::invalid_argument("toggle-on violates commutation with a logical");
    }
  }

  std::optional<int> sign = spec.declared_sign;
  if (!sign) {
    // State-preserving case: the operator is already fixed by the active
    // signed group.
    const BitPauli r = signed_basis().reduce(BitPauli::from(op, n_));
    if (r.is_identity_up_to_phase()) {
      if (r.phase_pow == 0) {
        sign = +1;
      } else if (r.phase_pow == 2) {
        sign = -1;
      } else {
        throw std::logic_error("non-Hermitian reduction of Hermitian operator");
      }
    }
  }
  auto existing = find_row(op);
  if (!sign && existing && !rows_[*existing].active) {
    const GenRow& r = rows_[*existing];
    // Remembered sign survives only if no projection happened and every
    // rotation applied since the toggle-off commutes with the operator.
    bool clean = r.projections_at_off == projections_applied_;
    for (uint64_t k = r.rotations_at_off; clean && k < rotations_applied_; ++k) {
      clean = rotation_log_[k].commutes_with(op);
    }
    if (clean) sign = r.sign;
  }
  if (!sign) {
    throw std::runtime_error(
        "toggle-on with unknown eigenvalue sign: not derivable from the "
        "active group and no valid remembered or declared sign");
  }
  if (spec.declared_sign) ++projections_applied_;
  if (existing && !rows_[*existing].active) {
    GenRow& r = rows_[*existing];
    r.active = true;
    r.sign = *sign;
    invalidate_basis();
    return *existing;
  }
  return add_generator(op, *sign);
}

std::optional<uint32_t> Tableau::find_row(const PauliOp& bare_op) const {
  for (uint32_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].op == bare_op) return i;
  }
  return std::nullopt;
}

std::size_t Tableau::register_logical(const PauliOp& x, const PauliOp& z,
                                      std::string tag) {
  if (x.commutes_with(z)) {
    throw std::invalid_argument("logical pair must anticommute");
  }
  logicals_.push_back(LogicalPair{x, z, std::move(tag)});
  return logicals_.size() - 1;
}

void Tableau::remove_logical(std::size_t index) {
  logicals_.erase(logicals_.begin() + static_cast<long>(index));
}

int Tableau::anticommute_count(const PauliOp& q) const {
  int count = 0;
  for (const auto& r : rows_) {
    if (r.active && !r.op.commutes_with(q)) ++count;
  }
  return count;
}

const StabilizerBasis& Tableau::signed_basis() const {
  if (!basis_) {
    StabilizerBasis basis(n_);
    for (const auto& r : rows_) {
      if (!r.active) continue;
      BitPauli b = BitPauli::from(r.op, n_);
      if (r.sign < 0) b.phase_pow = 2;
      basis.add(b);
    }
    basis_ = std::move(basis);
  }
  return *basis_;
}

ReducedOp Tableau::reduce_mod_stabilizer(const PauliOp& p) const {
  for (const auto& r : rows_) {
    if (r.active && !r.op.commutes_with(p)) {
      throw std::domain_error("operator is outside the stabilizer normalizer");
    }
  }
  ReducedOp out;
  const StabilizerBasis& basis = signed_basis();
  BitPauli cur = basis.reduce(BitPauli::from(p, n_));

  const std::size_t rank = basis.rank();
  if (rank < 63 && (1ULL << rank) <= budget_) {
    // Exhaustive subset walk in Gray-code order.
    BitPauli best = cur;
    BitPauli walk = cur;
    uint64_t gray = 0;
    for (uint64_t k = 1; k < (1ULL << rank); ++k) {
      const uint64_t next_gray = k ^ (k >> 1);
      const uint64_t flipped = gray ^ next_gray;
      int idx = 0;
      uint64_t f = flipped;
      while (!(f & 1)) {
        f >>= 1;
        ++idx;
      }
      walk.mul(basis.rows()[static_cast<std::size_t>(idx)]);
      gray = next_gray;
      if (walk.weight() < best.weight()) best = walk;
    }
    cur = best;
    out.weight_certified = true;
  } else {
    // Greedy descent over the physical generator rows (they are local,
    // unlike the echelonized basis), from both the canonical representative
    // and the raw operator; keep the lighter result.
    const BitPauli a = greedy_shorten(cur);
    const BitPauli b = greedy_shorten(BitPauli::from(p, n_));
    if (b.weight() < a.weight()) {
      cur = b;
    } else if (a.weight() < b.weight()) {
      cur = a;
    } else {
      cur = a.to_pauli().str() <= b.to_pauli().str() ? a : b;
    }
    out.weight_certified = false;
  }
  out.rep = cur.to_pauli();
  return out;
}

BitPauli Tableau::greedy_shorten(BitPauli v) const {
  // Light rows first: single-qubit terms clean an operator up before the
  // weight-4 generators get a chance to steer it into a mixed-axis form of
  // the same weight.
  std::vector<std::pair<std::size_t, const GenRow*>> order;
  for (const auto& r : rows_) {
    if (r.active) order.push_back({r.op.weight(), &r});
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<BitPauli> rows;
  rows.reserve(order.size());
  for (const auto& [w, r] : order) {
    BitPauli b = BitPauli::from(r->op, n_);
    if (r->sign < 0) b.phase_pow = 2;
    rows.push_back(std::move(b));
  }
  bool improved = true;
  while (improved) {
    improved = false;
    for (const auto& row : rows) {
      BitPauli cand = v;
      cand.mul(row);
      if (cand.weight() < v.weight()) {
        v = cand;
        improved = true;
      }
    }
  }
  return v;
}

bool Tableau::equivalent_mod_stabilizer(const PauliOp& a,
                                        const PauliOp& b) const {
  PauliOp d = b.with_phase((4 - b.phase_pow()) & 3) * a;  // b^dag a
  return signed_basis().contains(BitPauli::from(d, n_));
}

PauliOp Tableau::shorten_mod_stabilizer(const PauliOp& p) const {
  return greedy_shorten(BitPauli::from(p, n_)).to_pauli();
}

std::vector<std::string> Tableau::canonical_group_rows() const {
  std::vector<std::string> rows;
  for (const auto& r : signed_basis().rows()) {
    rows.push_back(r.to_pauli().str());
  }
  return rows;
}

std::size_t Tableau::active_rank() const {
  std::vector<PauliOp> ops;
  for (const auto& r : rows_) {
    if (r.active) ops.push_back(r.op);
  }
  return symplectic_rank(ops, n_);
}

std::size_t Tableau::max_active_weight() const {
  std::size_t w = 0;
  for (const auto& r : rows_) {
    if (r.active) w = std::max(w, r.op.weight());
  }
  return w;
}

void Tableau::check_invariants(std::size_t max_weight) const {
  std::vector<const GenRow*> act;
  for (const auto& r : rows_) {
    if (r.active) act.push_back(&r);
  }
  for (std::size_t i = 0; i < act.size(); ++i) {
    for (std::size_t j = i + 1; j < act.size(); ++j) {
      if (!act[i]->op.commutes_with(act[j]->op)) {
        throw std::logic_error("active generators do not commute");
      }
    }
  }
  for (std::size_t i = 0; i < logicals_.size(); ++i) {
    if (logicals_[i].x.commutes_with(logicals_[i].z)) {
      throw std::logic_error("logical pair fails to anticommute");
    }
    for (const GenRow* r : act) {
      if (!r->op.commutes_with(logicals_[i].x) ||
          !r->op.commutes_with(logicals_[i].z)) {
        throw std::logic_error("logical fails to commute with active group");
      }
    }
    for (std::size_t j = i + 1; j < logicals_.size(); ++j) {
      if (!logicals_[i].x.commutes_with(logicals_[j].x) ||
          !logicals_[i].x.commutes_with(logicals_[j].z) ||
          !logicals_[i].z.commutes_with(logicals_[j].x) ||
          !logicals_[i].z.commutes_with(logicals_[j].z)) {
        throw std::logic_error("logical pairs fail to commute across");
      }
    }
  }
  if (max_weight > 0 && max_active_weight() > max_weight) {
    throw std::logic_error("active generator weight bound exceeded");
  }
}

double Tableau::label_energy(const std::vector<int>& s, double J) {
  double e = 0.0;
  for (int v : s) {
    if (v < 0) e += 2.0 * J;
  }
  return e;
}

}  // namespace holosurf

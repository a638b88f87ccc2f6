#include "holosurf/protocols.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "holosurf/decoder.hpp"

namespace holosurf {
namespace protocols {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double theta) {
  while (theta <= -kPi) theta += 2 * kPi;
  while (theta > kPi) theta -= 2 * kPi;
  return theta;
}

// Conjugation of a signed Pauli by CNOT(control -> target), factor by
// factor; factors on distinct qubits commute before and after, so the
// product order is immaterial.
PauliOp conjugate_cnot(const PauliOp& p, std::size_t c, std::size_t t) {
  PauliOp out = PauliOp().with_phase(p.phase_pow());
  for (const auto& [q, a] : p.support()) {
    PauliOp image;
    if (q == c) {
      switch (a) {
        case Axis::X: image = PauliOp::make({{static_cast<QubitId>(c), Axis::X},
                                             {static_cast<QubitId>(t), Axis::X}});
          break;
        case Axis::Y: image = PauliOp::make({{static_cast<QubitId>(c), Axis::Y},
                                             {static_cast<QubitId>(t), Axis::X}});
          break;
        case Axis::Z: image = PauliOp::single(static_cast<QubitId>(c), Axis::Z);
          break;
      }
    } else if (q == t) {
      switch (a) {
        case Axis::X: image = PauliOp::single(static_cast<QubitId>(t), Axis::X);
          break;
        case Axis::Y: image = PauliOp::make({{static_cast<QubitId>(c), Axis::Z},
                                             {static_cast<QubitId>(t), Axis::Y}});
          break;
        case Axis::Z: image = PauliOp::make({{static_cast<QubitId>(c), Axis::Z},
                                             {static_cast<QubitId>(t), Axis::Z}});
          break;
      }
    } else {
      image = PauliOp::single(q, a);
    }
    out = out * image;
  }
  return out;
}

}  // namespace

StabilizerEngine::StabilizerEngine(std::size_t n) : n_(n) {
  rows_.reserve(n);
  for (std::size_t q = 0; q < n; ++q) {
    rows_.push_back(PauliOp::single(static_cast<QubitId>(q), Axis::Z));
  }
}

void StabilizerEngine::apply_pauli_unitary(const PauliOp& p) {
  for (auto& r : rows_) {
    if (!r.commutes_with(p)) r.mul_phase(2);
  }
}

void StabilizerEngine::apply_cnot(std::size_t control, std::size_t target) {
  if (control == target) throw std::invalid_argument("cnot on one qubit");
  for (auto& r : rows_) r = conjugate_cnot(r, control, target);
}

void StabilizerEngine::apply_phase_gate(std::size_t q) {
  for (auto& r : rows_) {
    if (!r.has_qubit(static_cast<QubitId>(q))) continue;
    const Axis a = r.axis_at(static_cast<QubitId>(q));
    if (a == Axis::X) {
      r.set_factor(static_cast<QubitId>(q), Axis::Y);
    } else if (a == Axis::Y) {
      r.set_factor(static_cast<QubitId>(q), Axis::X);
      r.mul_phase(2);
    }
  }
}

void StabilizerEngine::apply_rx_gate(std::size_t q) {
  for (auto& r : rows_) {
    if (!r.has_qubit(static_cast<QubitId>(q))) continue;
    const Axis a = r.axis_at(static_cast<QubitId>(q));
    if (a == Axis::Z) {
      r.set_factor(static_cast<QubitId>(q), Axis::Y);
      r.mul_phase(2);
    } else if (a == Axis::Y) {
      r.set_factor(static_cast<QubitId>(q), Axis::Z);
    }
  }
}

std::optional<int> StabilizerEngine::deterministic_value(
    const PauliOp& obs) const {
  for (const auto& r : rows_) {
    if (!r.commutes_with(obs)) return std::nullopt;
  }
  StabilizerBasis basis(n_);
  for (const auto& r : rows_) basis.add(BitPauli::from(r, n_));
  const BitPauli red = basis.reduce(BitPauli::from(obs.bare(), n_));
  if (!red.is_identity_up_to_phase()) {
    throw std::logic_error("commuting observable outside the row span");
  }
  const int value = red.phase_pow == 0 ? +1 : -1;
  // obs = sign * bare: reduced value is for the bare part
  return obs.sign() * value;
}

int StabilizerEngine::measure(const PauliOp& obs, Rng& rng) {
  if (!obs.is_hermitian()) {
    throw std::invalid_argument("observable must be Hermitian");
  }
  std::vector<std::size_t> anti;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!rows_[i].commutes_with(obs)) anti.push_back(i);
  }
  if (anti.empty()) return *deterministic_value(obs);
  const std::size_t pivot = anti.front();
  for (std::size_t k = 1; k < anti.size(); ++k) {
    rows_[anti[k]] = rows_[anti[k]] * rows_[pivot];
  }
  const int outcome = rng.bernoulli(0.5) ? +1 : -1;
  // the new stabilizer element is outcome * obs, sign folded into the row
  rows_[pivot] = obs.bare().with_phase(outcome * obs.sign() > 0 ? 0 : 2);
  return outcome;
}

void StabilizerEngine::reset_z(std::size_t q, int sign, Rng& rng) {
  const int m = measure(PauliOp::single(static_cast<QubitId>(q), Axis::Z), rng);
  if (m != sign) {
    apply_pauli_unitary(PauliOp::single(static_cast<QubitId>(q), Axis::X));
  }
}

void StabilizerEngine::reset_x(std::size_t q, int sign, Rng& rng) {
  const int m = measure(PauliOp::single(static_cast<QubitId>(q), Axis::X), rng);
  if (m != sign) {
    apply_pauli_unitary(PauliOp::single(static_cast<QubitId>(q), Axis::Z));
  }
}

LogicalRegister::LogicalRegister(std::size_t num_qubits, uint64_t seed)
    : engine_(num_qubits), qubits_(num_qubits), rng_(seed) {}

void LogicalRegister::declare(std::size_t q, CutKind type, char label,
                              bool pooled, bool contact) {
  LogicalQubit& lq = qubits_.at(q);
  lq.type = type;
  lq.pooled = pooled;
  lq.contact = contact;
  lq.magic.reset();
  switch (label) {
    case '0': engine_.reset_z(q, +1, rng_); break;
    case '1': engine_.reset_z(q, -1, rng_); break;
    case '+': engine_.reset_x(q, +1, rng_); break;
    case '-': engine_.reset_x(q, -1, rng_); break;
    default: throw std::invalid_argument("unknown state label");
  }
}

std::size_t LogicalRegister::acquire_ancilla(CutKind type, char label,
                                             bool require_contact) {
  for (std::size_t q = 0; q < qubits_.size(); ++q) {
    if (qubits_[q].pooled && qubits_[q].type == type &&
        (!require_contact || qubits_[q].contact)) {
      declare(q, type, label, false, qubits_[q].contact);
      return q;
    }
  }
  throw std::runtime_error("ancilla pool exhausted");
}

void LogicalRegister::release_ancilla(std::size_t q, char label) {
  (void)label;  // the collapsed state is already a declared stabilizer state
  qubits_.at(q).magic.reset();
  qubits_.at(q).pooled = true;
}

std::size_t LogicalRegister::pooled_count(CutKind type) const {
  std::size_t k = 0;
  for (const auto& lq : qubits_) {
    if (lq.pooled && lq.type == type) ++k;
  }
  return k;
}

void LogicalRegister::require_engine_backed(std::size_t q) const {
  if (qubits_.at(q).magic) {
    throw std::invalid_argument("operation unsupported on a magic-labeled qubit");
  }
}

LogicalRegister::CnotResult LogicalRegister::cnot(std::size_t control,
                                                  std::size_t target) {
  require_engine_backed(control);
  require_engine_backed(target);
  const CutKind ct = qubits_[control].type;
  const CutKind tt = qubits_[target].type;

  if (ct == CutKind::ZCut && tt == CutKind::XCut) {
    // braid-backed primitive
    engine_.apply_cnot(control, target);
    return {control, target};
  }
  if (ct == CutKind::ZCut && tt == CutKind::ZCut) {
    const std::size_t a0 = acquire_ancilla(CutKind::XCut, '0');
    const std::size_t a1 = acquire_ancilla(CutKind::ZCut, '+');
    engine_.apply_cnot(target, a0);
    engine_.apply_cnot(control, a0);
    engine_.apply_cnot(a1, a0);
    const int m1 = engine_.measure(
        PauliOp::single(static_cast<QubitId>(a0), Axis::Z), rng_);
    const int m2 = engine_.measure(
        PauliOp::single(static_cast<QubitId>(target), Axis::X), rng_);
    if (m2 < 0) {
      engine_.apply_pauli_unitary(
          PauliOp::make({{static_cast<QubitId>(control), Axis::Z},
                         {static_cast<QubitId>(a1), Axis::Z}}));
      log_fixup("cnot-zz: Z_L on control and target");
    }
    if (m1 < 0) {
      engine_.apply_pauli_unitary(
          PauliOp::single(static_cast<QubitId>(a1), Axis::X));
      log_fixup("cnot-zz: X_L on target");
    }
    release_ancilla(a0, m1 > 0 ? '0' : '1');
    release_ancilla(target, m2 > 0 ? '+' : '-');
    return {control, a1};
  }
  // X-cut control: same composite serves X-cut and Z-cut targets
  const std::size_t a0 = acquire_ancilla(CutKind::XCut, '0');
  const std::size_t a1 = acquire_ancilla(CutKind::ZCut, '+');
  engine_.apply_cnot(a1, control);
  engine_.apply_cnot(a1, target);
  engine_.apply_cnot(a1, a0);
  const int m1 = engine_.measure(
      PauliOp::single(static_cast<QubitId>(control), Axis::Z), rng_);
  const int m2 = engine_.measure(
      PauliOp::single(static_cast<QubitId>(a1), Axis::X), rng_);
  if (m1 < 0) {
    engine_.apply_pauli_unitary(
        PauliOp::make({{static_cast<QubitId>(a0), Axis::X},
                       {static_cast<QubitId>(target), Axis::X}}));
    log_fixup("cnot-x*: X_L on control and target");
  }
  if (m2 < 0) {
    engine_.apply_pauli_unitary(
        PauliOp::single(static_cast<QubitId>(a0), Axis::Z));
    log_fixup("cnot-x*: Z_L on control");
  }
  release_ancilla(control, m1 > 0 ? '0' : '1');
  release_ancilla(a1, m2 > 0 ? '+' : '-');
  return {a0, target};
}

int LogicalRegister::measure_logical(std::size_t q, Axis basis) {
  LogicalQubit& lq = qubits_.at(q);
  if (lq.magic) {
    // the label collapses to a stabilizer state
    const double theta = lq.magic->theta;
    int outcome;
    if (basis == Axis::Z) {
      outcome = rng_.bernoulli(0.5) ? +1 : -1;
      lq.magic.reset();
      engine_.reset_z(q, outcome, rng_);
    } else if (basis == Axis::X) {
      const double p_plus = std::cos(theta / 2) * std::cos(theta / 2);
      outcome = rng_.bernoulli(p_plus) ? +1 : -1;
      lq.magic.reset();
      engine_.reset_x(q, outcome, rng_);
    } else {
      throw std::invalid_argument("unsupported basis on a magic label");
    }
    return outcome;
  }
  const bool first_kind = (lq.type == CutKind::XCut && basis == Axis::Z) ||
                          (lq.type == CutKind::ZCut && basis == Axis::X);
  if (first_kind) {
    return engine_.measure(PauliOp::single(static_cast<QubitId>(q), basis),
                           rng_);
  }
  if (lq.type == CutKind::ZCut && basis == Axis::Z) {
    const std::size_t a = acquire_ancilla(CutKind::XCut, '0');
    engine_.apply_cnot(q, a);
    const int m = engine_.measure(
        PauliOp::single(static_cast<QubitId>(a), Axis::Z), rng_);
    release_ancilla(a, m > 0 ? '0' : '1');
    return m;
  }
  if (lq.type == CutKind::XCut && basis == Axis::X) {
    const std::size_t a = acquire_ancilla(CutKind::ZCut, '+');
    engine_.apply_cnot(a, q);
    const int m = engine_.measure(
        PauliOp::single(static_cast<QubitId>(a), Axis::X), rng_);
    release_ancilla(a, m > 0 ? '+' : '-');
    return m;
  }
  throw std::invalid_argument("unsupported basis");
}

int LogicalRegister::measure_logical_voted(std::size_t q, Axis basis,
                                           int shared_qubits, double p_flip) {
  const int truth = measure_logical(q, basis);
  std::vector<int> outcomes(static_cast<std::size_t>(shared_qubits), truth);
  for (auto& v : outcomes) {
    if (rng_.bernoulli(p_flip)) v = -v;
  }
  return contact_vote(outcomes);
}

void LogicalRegister::inject(std::size_t q, double theta,
                             const InjectionNoise* noise) {
  LogicalQubit& lq = qubits_.at(q);
  if (lq.type == CutKind::ZCut) {
    // swap through an injected X-cut helper
    const std::size_t helper =
        acquire_ancilla(CutKind::XCut, '+', /*require_contact=*/true);
    inject(helper, theta, noise);
    // the swap circuit exchanges the logical contents; the helper returns
    // to |+> and is ready for the next injection
    lq.magic = qubits_[helper].magic;
    qubits_[helper].magic.reset();
    engine_.reset_x(helper, +1, rng_);
    engine_.reset_z(q, +1, rng_);
    release_ancilla(helper, '+');
    return;
  }
  if (!lq.contact) {
    throw std::invalid_argument("injection needs a contact-configured X-cut pair");
  }
  require_engine_backed(q);
  const auto dv = engine_.deterministic_value(
      PauliOp::single(static_cast<QubitId>(q), Axis::X));
  if (!dv || *dv != +1) {
    throw std::invalid_argument("injection requires the |+> state");
  }
  if (theta == 0.0) return;  // pulse off: still |+>

  double actual = theta;
  double infidelity = 0.0;
  if (noise) {
    if (noise->theta_sigma > 0) {
      // Box-Muller
      const double u1 = std::max(rng_.next_double(), 1e-300);
      const double u2 = rng_.next_double();
      actual += noise->theta_sigma * std::sqrt(-2.0 * std::log(u1)) *
                std::cos(2 * kPi * u2);
    }
    infidelity = analysis::injection_error(noise->d).evaluate(noise->p, noise->cbJ);
    if (rng_.bernoulli(infidelity)) actual += kPi;  // logical flip
  }
  lq.magic = MagicLabel{wrap_angle(actual), infidelity};
  engine_.reset_z(q, +1, rng_);  // park the engine row
}

DistillOutcome LogicalRegister::distill_common(
    const DistillationCode& code, const std::vector<std::size_t>& inputs,
    double target_theta) {
  if (inputs.size() != static_cast<std::size_t>(code.n)) {
    throw std::invalid_argument("wrong number of distillation inputs");
  }
  std::vector<double> eps;
  uint32_t flips = 0;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const LogicalQubit& lq = qubits_.at(inputs[k]);
    if (!lq.magic) {
      throw std::invalid_argument("distillation inputs must be magic-labeled");
    }
    eps.push_back(lq.magic->infidelity);
    const bool truly_flipped =
        std::abs(wrap_angle(lq.magic->theta - target_theta)) > kPi / 2;
    if (truly_flipped) flips |= 1u << k;
  }
  const PatternResult pr = run_pattern(code, flips);
  DistillOutcome out;
  out.accepted = pr.accepted;
  out.output = inputs.front();

  // recycle every input; on acceptance the first one carries the output
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    qubits_[inputs[k]].magic.reset();
    engine_.reset_x(inputs[k], +1, rng_);
    if (!(out.accepted && k == 0)) release_ancilla(inputs[k], '+');
  }
  if (out.accepted) {
    const DistillStats stats = distill_exact(code, eps);
    qubits_[out.output].magic =
        MagicLabel{pr.output_flipped ? wrap_angle(target_theta + kPi)
                                     : target_theta,
                   stats.output_infidelity};
    qubits_[out.output].pooled = false;
  }
  return out;
}

DistillOutcome LogicalRegister::distill_y(
    const std::vector<std::size_t>& inputs) {
  return distill_common(DistillationCode::steane_y(), inputs, kPi / 2);
}

DistillOutcome LogicalRegister::distill_a(
    const std::vector<std::size_t>& inputs) {
  return distill_common(DistillationCode::rm15_a(), inputs, kPi / 4);
}

void LogicalRegister::apply_s(std::size_t q) {
  if (y_pool_ <= 0) throw std::runtime_error("empty magic pool: no Y state");
  --y_pool_;
  const int m = rng_.bernoulli(0.5) ? +1 : -1;
  if (m < 0) log_fixup("S: Z_L X_L");
  LogicalQubit& lq = qubits_.at(q);
  if (lq.magic) {
    lq.magic->theta = wrap_angle(lq.magic->theta + kPi / 2);
    return;
  }
  engine_.apply_phase_gate(q);
}

void LogicalRegister::apply_rx(std::size_t q) {
  if (y_pool_ <= 0) throw std::runtime_error("empty magic pool: no Y state");
  --y_pool_;
  const int m = rng_.bernoulli(0.5) ? +1 : -1;
  if (m < 0) log_fixup("R_X: Z_L X_L");
  LogicalQubit& lq = qubits_.at(q);
  if (lq.magic) {
    throw std::invalid_argument("R_X on a generic magic label is unsupported");
  }
  engine_.apply_rx_gate(q);
}

void LogicalRegister::apply_t(std::size_t q) {
  if (a_pool_ <= 0) throw std::runtime_error("empty magic pool: no A state");
  --a_pool_;
  const int m = rng_.bernoulli(0.5) ? +1 : -1;
  if (m < 0) {
    // the minus branch needs an extra S after the Pauli frame update
    if (y_pool_ <= 0) {
      throw std::runtime_error("empty magic pool: T fix-up needs an S");
    }
    --y_pool_;
    log_fixup("T: Z_L X_L S_L");
  }
  LogicalQubit& lq = qubits_.at(q);
  if (lq.magic) {
    lq.magic->theta = wrap_angle(lq.magic->theta + kPi / 4);
    return;
  }
  // diagonal states are fixed; equatorial stabilizer states turn magic
  const auto dz = engine_.deterministic_value(
      PauliOp::single(static_cast<QubitId>(q), Axis::Z));
  if (dz) return;
  const auto dx = engine_.deterministic_value(
      PauliOp::single(static_cast<QubitId>(q), Axis::X));
  const auto dy = engine_.deterministic_value(
      PauliOp::single(static_cast<QubitId>(q), Axis::Y));
  double theta0;
  if (dx) {
    theta0 = *dx > 0 ? 0.0 : kPi;
  } else if (dy) {
    theta0 = *dy > 0 ? kPi / 2 : -kPi / 2;
  } else {
    throw std::invalid_argument("T on an entangled qubit is unsupported");
  }
  lq.magic = MagicLabel{wrap_angle(theta0 + kPi / 4), 0.0};
  engine_.reset_z(q, +1, rng_);
}

void LogicalRegister::apply_h(std::size_t q) {
  apply_s(q);
  apply_rx(q);
  apply_s(q);
}

}  // namespace protocols
}  // namespace holosurf

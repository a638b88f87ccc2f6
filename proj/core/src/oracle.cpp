#include "holosurf/oracle.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace holosurf {
namespace oracle {

namespace {

double binom(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0));
}

}  // namespace

double smoothstep(int order, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (order <= 0) return x;
  double acc = 0.0;
  for (int k = 0; k <= order; ++k) {
    acc += binom(order + k, k) * binom(2 * order + 1, order - k) *
           std::pow(-x, k);
  }
  return std::pow(x, order + 1) * acc;
}

double smoothstep_max_slope(int order) {
  // maximum at x = 1/2
  const double h = 1e-6;
  return (smoothstep(order, 0.5 + h) - smoothstep(order, 0.5 - h)) / (2 * h);
}

State apply_pauli_state(const PauliOp& p, const State& psi) {
  // Decompose every Y as i X Z; the operator is then
  // i^{phase + #Y} * X(xmask) * Z(zmask) with Y positions in both masks.
  const std::size_t dim = psi.size();
  State out(dim);
  uint64_t xmask = 0, zmask = 0;
  int y_count = 0;
  for (const auto& [q, a] : p.support()) {
    const auto bits = static_cast<uint8_t>(a);
    if (bits & 1) xmask |= uint64_t{1} << q;
    if (bits & 2) zmask |= uint64_t{1} << q;
    if (a == Axis::Y) ++y_count;
  }
  static const Complex kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex base = kPhase[(p.phase_pow() + y_count) & 3];
  for (uint64_t i = 0; i < dim; ++i) {
    // convention: bit q of the index is 1 when qubit q is |1>
    const int zpar = std::popcount(i & zmask) & 1;
    out[i ^ xmask] = zpar ? -base * psi[i] : base * psi[i];
  }
  return out;
}

State apply_rotation_state(const PauliOp& q, const State& psi) {
  if (!q.is_hermitian()) {
    throw std::invalid_argument("rotation generator must be Hermitian");
  }
  const State qpsi = apply_pauli_state(q, psi);
  State out(psi.size());
  const double inv = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    out[i] = inv * (psi[i] + Complex(0, 1) * qpsi[i]);
  }
  return out;
}

double fidelity(const State& a, const State& b) {
  Complex ov = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) ov += std::conj(a[i]) * b[i];
  return std::norm(ov);
}

Eigen::MatrixXcd dense_matrix(const PauliOp& p, std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  State basis(static_cast<std::size_t>(dim));
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    std::fill(basis.begin(), basis.end(), Complex{0, 0});
    basis[static_cast<std::size_t>(c)] = 1.0;
    const State col = apply_pauli_state(p, basis);
    for (Eigen::Index r = 0; r < dim; ++r) {
      m(r, c) = col[static_cast<std::size_t>(r)];
    }
  }
  return m;
}

DenseSystem::DenseSystem(std::size_t num_qubits,
                         std::vector<PauliOp> generators, double J)
    : n_(num_qubits), J_(J), gens_(std::move(generators)) {
  if (n_ > 12) throw std::invalid_argument("dense systems are capped at 12 qubits");
  for (const auto& g : gens_) {
    if (!g.is_hermitian()) {
      throw std::invalid_argument("generators must be Hermitian");
    }
  }
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    for (std::size_t j = i + 1; j < gens_.size(); ++j) {
      if (!gens_[i].commutes_with(gens_[j])) {
        throw std::invalid_argument("generators must commute");
      }
    }
  }
}

std::size_t DenseSystem::ground_dimension() const {
  return ground_basis().size();
}

std::vector<State> DenseSystem::ground_basis() const {
  const std::size_t dim = this->dim();
  std::vector<State> basis;
  for (std::size_t seed = 0; seed < dim; ++seed) {
    State v(dim, Complex{0, 0});
    v[seed] = 1.0;
    // project onto the mutual +1 eigenspace
    for (const auto& g : gens_) {
      const State gv = apply_pauli_state(g, v);
      for (std::size_t i = 0; i < dim; ++i) v[i] = 0.5 * (v[i] + gv[i]);
    }
    // Gram-Schmidt against what we have
    for (const auto& b : basis) {
      Complex ov = 0.0;
      for (std::size_t i = 0; i < dim; ++i) ov += std::conj(b[i]) * v[i];
      for (std::size_t i = 0; i < dim; ++i) v[i] -= ov * b[i];
    }
    double norm = 0.0;
    for (const auto& c : v) norm += std::norm(c);
    if (norm > 1e-9) {
      const double inv = 1.0 / std::sqrt(norm);
      for (auto& c : v) c *= inv;
      basis.push_back(std::move(v));
    }
  }
  if (basis.empty()) throw std::logic_error("empty ground space");
  return basis;
}

State DenseSystem::apply_step_clifford(const std::vector<PauliOp>& rotations,
                                       State psi) const {
  for (const auto& q : rotations) psi = apply_rotation_state(q, psi);
  return psi;
}

void DenseSystem::conjugate_generators(const std::vector<PauliOp>& rotations) {
  for (auto& g : gens_) {
    for (const auto& q : rotations) g = conjugate_by_rotation(g, q);
  }
}

DenseSystem::TermSplit DenseSystem::split_terms(
    const std::vector<PauliOp>& rotations) const {
  TermSplit split;
  bool any = false;
  for (const auto& g : gens_) {
    const PauliOp* hit = nullptr;
    for (const auto& q : rotations) {
      if (!g.commutes_with(q)) {
        if (hit) {
          throw std::invalid_argument(
              "a generator anticommutes with two rotations in one step");
        }
        hit = &q;
      }
    }
    if (hit) {
      any = true;
      split.rotated.push_back({g, conjugate_by_rotation(g, *hit)});
    } else {
      split.static_terms.push_back(g);
    }
  }
  if (!any && !rotations.empty()) {
    throw std::invalid_argument(
        "trivial deformation: no generator anticommutes with the step");
  }
  return split;
}

void DenseSystem::integrate_step(const std::vector<PauliOp>& rotations,
                                 const SchedulePolicy& sched,
                                 State& psi) const {
  const TermSplit split = split_terms(rotations);
  const std::size_t dim = psi.size();

  auto rhs = [&](double t, const State& v) {
    const double f = (std::numbers::pi / 4.0) *
                     smoothstep(sched.smoothness, t / sched.total_time);
    const double c = std::cos(2.0 * f);
    const double s = std::sin(2.0 * f);
    State h(dim, Complex{0, 0});
    auto add = [&](const PauliOp& op, double coeff) {
      const State term = apply_pauli_state(op, v);
      for (std::size_t i = 0; i < dim; ++i) h[i] += coeff * term[i];
    };
    for (const auto& g : split.static_terms) add(g, -J_);
    for (const auto& [a, b] : split.rotated) {
      add(a, -J_ * c);
      add(b, -J_ * s);
    }
    for (std::size_t i = 0; i < dim; ++i) h[i] *= Complex(0, -1);
    return h;
  };

  const auto steps = static_cast<long long>(
      std::ceil(sched.total_time / sched.dt));
  const double dt = sched.total_time / static_cast<double>(steps);
  State k1, k2, k3, k4, tmp(dim);
  for (long long s = 0; s < steps; ++s) {
    const double t = static_cast<double>(s) * dt;
    k1 = rhs(t, psi);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + 0.5 * dt * k1[i];
    k2 = rhs(t + 0.5 * dt, tmp);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + 0.5 * dt * k2[i];
    k3 = rhs(t + 0.5 * dt, tmp);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + dt * k3[i];
    k4 = rhs(t + dt, tmp);
    for (std::size_t i = 0; i < dim; ++i) {
      psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    double norm = 0.0;
    for (const auto& c : psi) norm += std::norm(c);
    if (std::abs(norm - 1.0) > 1e-6) {
      throw std::runtime_error("integrator norm drift: reduce the step size");
    }
    const double inv = 1.0 / std::sqrt(norm);
    for (auto& c : psi) c *= inv;
  }
}

Eigen::MatrixXcd DenseSystem::hamiltonian_matrix(
    const std::vector<PauliOp>& rotations, double f) const {
  const TermSplit split = split_terms(rotations);
  const auto dim = static_cast<Eigen::Index>(this->dim());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& g : split.static_terms) h += -J_ * dense_matrix(g, n_);
  const double c = std::cos(2.0 * f);
  const double s = std::sin(2.0 * f);
  for (const auto& [a, b] : split.rotated) {
    h += -J_ * c * dense_matrix(a, n_);
    h += -J_ * s * dense_matrix(b, n_);
  }
  return h;
}

HolonomyResult holonomy(DenseSystem sys,
                        const std::vector<std::vector<PauliOp>>& loop,
                        const SchedulePolicy& sched) {
  const auto start_gens = sys.generators();
  const std::vector<State> v0 = sys.ground_basis();
  const auto k = static_cast<Eigen::Index>(v0.size());
  double total_time = 0.0;

  std::vector<State> vt = v0;
  for (const auto& step : loop) {
    for (auto& col : vt) sys.integrate_step(step, sched, col);
    sys.conjugate_generators(step);
    total_time += sched.total_time;
  }
  // loop closure at the frame level
  if (sys.generators() != start_gens) {
    throw std::runtime_error("holonomy loop does not close");
  }

  // leakage out of the returning ground space
  DenseSystem check(sys.num_qubits(), start_gens, sys.coupling());
  double leak = 0.0;
  for (const auto& col : vt) {
    State proj = col;
    for (const auto& g : start_gens) {
      const State gv = apply_pauli_state(g, proj);
      for (std::size_t i = 0; i < proj.size(); ++i) {
        proj[i] = 0.5 * (proj[i] + gv[i]);
      }
    }
    double out_norm = 0.0;
    for (std::size_t i = 0; i < proj.size(); ++i) {
      out_norm += std::norm(col[i] - proj[i]);
    }
    leak = std::max(leak, std::sqrt(out_norm));
  }
  if (leak > 1e-3) {
    throw std::runtime_error("holonomy loop leaks out of the ground space");
  }

  // divide out the dynamical phase
  const Complex dyn = std::exp(Complex(0, -1) * sys.ground_energy() * total_time);
  HolonomyResult res;
  res.max_leakage = leak;
  res.gamma = Eigen::MatrixXcd(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      Complex ov = 0.0;
      for (std::size_t i = 0; i < v0[0].size(); ++i) {
        ov += std::conj(v0[static_cast<std::size_t>(r)][i]) *
              vt[static_cast<std::size_t>(c)][i];
      }
      res.gamma(r, c) = ov / dyn;
    }
  }
  return res;
}

std::vector<CurvePoint> adiabatic_error_curve(
    const DenseSystem& sys, const std::vector<PauliOp>& rotations,
    int smoothness, const std::vector<double>& times, double dt) {
  std::vector<CurvePoint> out;
  const State psi0 = sys.ground_state();
  const State predicted = sys.apply_step_clifford(rotations, psi0);
  for (double T : times) {
    SchedulePolicy sched;
    sched.total_time = T;
    sched.smoothness = smoothness;
    sched.dt = dt;
    State psi = psi0;
    sys.integrate_step(rotations, sched, psi);
    const double f = fidelity(predicted, psi);
    out.push_back(CurvePoint{T, smoothness, 1.0 - f, f});
  }
  return out;
}

}  // namespace oracle
}  // namespace holosurf

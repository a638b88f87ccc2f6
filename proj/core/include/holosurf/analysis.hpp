#pragma once

#include <cstdint>
#include <vector>

namespace holosurf {
namespace analysis {

struct RateQuery {
  int d = 11;
  long long m = 1;
  double p = 1e-3;
  double cbJ = 12.0;
};

// Logical error rate per m time steps with active correction:
//   P_L^m = d * d!/((d_e-1)! d_e!) * (m e^{-2 cbJ} + 7 p)^{d_e},
// with d_e = (d+1)/2, evaluated in log space. Throws when the bracket
// reaches 1 (outside the regime of validity).
double logical_rate(const RateQuery& q);

// Order-of-magnitude expression prefactor * p^p_exponent * e^{-c * cbJ}.
// Kept structured so callers cannot mistake it for an exact probability.
struct OrderEstimate {
  double prefactor = 1.0;
  int p_exponent = 0;
  double cbj_coefficient = 0.0;
  double evaluate(double p, double cbJ) const;
};

struct MovementMisdetection {
  OrderEstimate p_l;  // error present but the vote stays silent
  OrderEstimate p_u;  // no error but a full correction is triggered
};

MovementMisdetection movement_misdetection(int d);  // d multiple of 8
OrderEstimate injection_error(int d);               // d multiple of 4

struct PerturbationParams {
  double J = 1.0;
  double h_max = 1e-3;
  double J2_max = 1e-3;
  int d = 11;
};

// Ground-space splitting J e^{-v d / 2} with
// v = min(ln(J/h_max), ln(J/J2_max)); requires weak perturbations (v > 0).
double perturbation_splitting(const PerturbationParams& pp);

struct AdiabaticBudget {
  double T_q = 0.0;
  double delta_ad_bound = 0.0;
};

// Per-segment evolution time T_q = (e/gamma) N xi^2 / delta_min^3 and the
// matching bound delta_ad <= (N+1)^{gamma+1} e^{-N}.
AdiabaticBudget adiabatic_budget(double gamma, double smoothness, double xi,
                                 double delta_min);

struct ResourceQuery {
  double M = 1e14;    // logical ops x logical qubits
  double delta = 0.1; // total failure budget
  double p = 1e-3;
  double cbJ = 12.0;
  std::vector<long long> m_grid = {100000000LL};
};

struct ResourceEstimate {
  int d = 0;
  long long m = 0;
  long long n_tot = 0;  // (2d-1)^2 data plus measurement qubits
  double rate = 0.0;    // P_L^m at the chosen point
  double budget = 0.0;  // m delta / (d M)
};

// Smallest odd d in [3, 41] (with the largest feasible m from the grid)
// satisfying P_L^m <= m delta / (d M). Throws when infeasible.
ResourceEstimate estimate_resources(const ResourceQuery& rq);

}  // namespace analysis
}  // namespace holosurf

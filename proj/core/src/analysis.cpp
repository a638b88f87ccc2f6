#include "holosurf/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace holosurf {
namespace analysis {

double logical_rate(const RateQuery& q) {
  if (q.d < 3) throw std::invalid_argument("distance must be >= 3");
  if (q.p < 0 || q.p > 1 || q.m < 0 || q.cbJ < 0) {
    throw std::invalid_argument("bad rate query");
  }
  const double x =
      static_cast<double>(q.m) * std::exp(-2.0 * q.cbJ) + 7.0 * q.p;
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) {
    throw std::domain_error("outside the validity regime: m e^{-2cbJ} + 7p >= 1");
  }
  const double de = (q.d + 1) / 2.0;
  const double log_rate = std::log(static_cast<double>(q.d)) +
                          std::lgamma(q.d + 1.0) - std::lgamma(de) -
                          std::lgamma(de + 1.0) + de * std::log(x);
  return std::exp(log_rate);
}

double OrderEstimate::evaluate(double p, double cbJ) const {
  return prefactor * std::pow(p, p_exponent) *
         std::exp(-cbj_coefficient * cbJ);
}

MovementMisdetection movement_misdetection(int d) {
  if (d <= 0 || d % 8 != 0) {
    throw std::invalid_argument("movement estimate needs d divisible by 8");
  }
  MovementMisdetection out;
  out.p_l = OrderEstimate{d / 4.0, d / 16 + 1, 4.0};
  out.p_u = OrderEstimate{d / 4.0, d / 16, 4.0};
  return out;
}

OrderEstimate injection_error(int d) {
  if (d <= 0 || d % 4 != 0) {
    throw std::invalid_argument("injection estimate needs d divisible by 4");
  }
  return OrderEstimate{1.0, d / 8 + 1, 4.0};
}

double perturbation_splitting(const PerturbationParams& pp) {
  if (pp.J <= 0 || pp.h_max < 0 || pp.J2_max < 0) {
    throw std::invalid_argument("bad perturbation parameters");
  }
  if (pp.h_max == 0 && pp.J2_max == 0) return 0.0;
  const double v_h =
      pp.h_max > 0 ? std::log(pp.J / pp.h_max) : std::numeric_limits<double>::infinity();
  const double v_j =
      pp.J2_max > 0 ? std::log(pp.J / pp.J2_max) : std::numeric_limits<double>::infinity();
  const double v = std::min(v_h, v_j);
  if (v <= 0) {
    throw std::domain_error("perturbation is not weak: v <= 0");
  }
  return pp.J * std::exp(-v * pp.d / 2.0);
}

AdiabaticBudget adiabatic_budget(double gamma, double smoothness, double xi,
                                 double delta_min) {
  if (gamma <= 0 || smoothness <= 0 || xi <= 0 || delta_min <= 0) {
    throw std::invalid_argument("adiabatic budget needs positive inputs");
  }
  AdiabaticBudget b;
  b.T_q = (std::exp(1.0) / gamma) * smoothness * xi * xi /
          (delta_min * delta_min * delta_min);
  b.delta_ad_bound = std::pow(smoothness + 1.0, gamma + 1.0) *
                     std::exp(-smoothness);
  return b;
}

ResourceEstimate estimate_resources(const ResourceQuery& rq) {
  if (rq.delta <= 0 || rq.delta >= 1 || rq.M < 1 || rq.m_grid.empty()) {
    throw std::invalid_argument("bad resource query");
  }
  for (int d = 3; d <= 41; d += 2) {
    ResourceEstimate best;
    bool found = false;
    for (long long m : rq.m_grid) {
      RateQuery q{d, m, rq.p, rq.cbJ};
      double rate;
      try {
        rate = logical_rate(q);
      } catch (const std::domain_error&) {
        continue;
      }
      const double budget = static_cast<double>(m) * rq.delta / (d * rq.M);
      if (rate <= budget && (!found || m > best.m)) {
        best = ResourceEstimate{d, m, (2LL * d - 1) * (2LL * d - 1), rate,
                                budget};
        found = true;
      }
    }
    if (found) return best;
  }
  throw std::runtime_error("no feasible (d, m) on the search grid");
}

}  // namespace analysis
}  // namespace holosurf

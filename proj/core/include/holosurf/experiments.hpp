#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "holosurf/analysis.hpp"
#include "holosurf/deformation.hpp"
#include "holosurf/decoder.hpp"
#include "holosurf/noise.hpp"

namespace holosurf {
namespace experiments {

uint64_t fnv1a_hash(const std::string& s);
// "# holosurf <version>" / "# config_hash=..." / "# seed=..." lines
std::string artifact_header(const std::string& config_echo, uint64_t seed);

// ---------------------------------------------------------------- memory --
struct MemoryParams {
  int L = 3;
  double p = 1e-3;      // per-round data error and measurement flip rate
  int rounds = 0;       // 0 means L noisy rounds; a perfect round follows
  long long trials = 100000;
  uint64_t seed = 1;
  int workers = 1;
};

struct MemoryResult {
  long long trials = 0;
  long long failures_x = 0;
  long long failures_z = 0;
  long long failures_any = 0;
  double rate() const {
    return trials ? static_cast<double>(failures_any) / trials : 0.0;
  }
};

MemoryResult memory_monte_carlo(const MemoryParams& prm);

// one-sided comparison: rate(a) < rate(b) with approximately normal errors
double one_sided_z_score(const MemoryResult& smaller, const MemoryResult& larger);

// -------------------------------------------------------- movement votes --
struct MovementParams {
  int d = 16;
  double p = 0.03;       // single-qubit readout flip rate
  long long trials = 1000000;
  uint64_t seed = 7;
};

struct MovementResult {
  long long trials = 0;
  long long misses = 0;      // corrupted row present, no row flagged
  double miss_rate() const {
    return trials ? static_cast<double>(misses) / trials : 0.0;
  }
};

// Conditional design: every trial corrupts one row, flips each outcome with
// probability p, and asks the vote whether anything flags.
MovementResult movement_vote_monte_carlo(const MovementParams& prm);

struct ExponentFit {
  std::vector<int> ds;
  std::vector<double> rates;
  double fitted_step = 0.0;  // d(ln rate)/d(exponent)
  double ratio = 0.0;        // fitted_step / ln(p): 1.0 when exact
};

ExponentFit movement_exponent_fit(const std::vector<int>& ds, double p,
                                  long long trials_base, uint64_t seed);

// Wrong contact-vote frequency over d/4 outcomes flipped at rate p.
struct InjectionVoteResult {
  long long trials = 0;
  long long wrong = 0;
  long long ties = 0;
};
InjectionVoteResult injection_vote_monte_carlo(int d, double p,
                                               long long trials, uint64_t seed);
ExponentFit injection_exponent_fit(const std::vector<int>& ds, double p,
                                   long long trials_base, uint64_t seed);

// ------------------------------------------------------------- artifacts --
struct RateCurveConfig {
  std::vector<int> ds = {7, 11, 15, 19};
  std::vector<double> cbJs = {8.0, 12.0};
  std::vector<long long> ms = {100,     1000,     10000,     100000,
                               1000000, 10000000, 100000000, 1000000000};
  double p = 1e-3;
};
// CSV "d,cbJ,m,P_L_m"; rows outside the validity regime are skipped
std::string rate_curve_csv(const RateCurveConfig& cfg,
                           const std::string& header);

std::string estimate_report_json(const analysis::ResourceQuery& rq,
                                 const std::string& config_echo);

// ------------------------------------------------------------ braid check --
struct BraidCheckReport {
  bool ok = false;
  std::vector<std::string> lines;
};
BraidCheckReport braid_check(int L = 12);

// ---------------------------------------------------------- oracle verify --
struct OracleVerifyReport {
  bool ok = false;
  double endpoint_fidelity = 0.0;
  double propagated_fidelity = 0.0;
  bool parallel_matches = false;
  bool delta_monotone = false;
  std::vector<std::string> lines;
  std::string curve_csv;  // T,smoothness,delta_ad,fidelity
};
OracleVerifyReport oracle_verify(double base_time = 5.0, int doublings = 4);

// Integrates a serialized schedule (the deformation interchange format) on
// a small explicit system and reports endpoint fidelity against the
// Clifford prediction. Toggles are not representable in the dense model, so
// schedules must be rotation-only.
struct ScheduleRunReport {
  double fid = 0.0;
  std::size_t steps = 0;
  std::string summary_json;
};
ScheduleRunReport oracle_run_schedule(const std::vector<std::string>& generators,
                                      const std::string& schedule_json_text,
                                      double total_time_scale = 1.0);

// ---------------------------------------------------------------- replay --
struct ReplayReport {
  long long rounds = 0;
  long long events = 0;
  bool failure_x = false;
  bool failure_z = false;
  std::string summary_json;
};
ReplayReport replay_events(int L, const std::vector<ErrorEvent>& events);

// ------------------------------------------------------------------ JSON --
std::string lattice_json(const Lattice& lat,
                         const std::vector<DefectQubit>& defects);
std::string tableau_json(const Tableau& tab);
std::string schedule_json(const std::vector<DeformationStep>& steps);
std::vector<DeformationStep> schedule_from_json(const std::string& text);
std::string matching_json(const Decoder::KindDecode& decode);

// ------------------------------------------------------- logical programs --
// Executes a tiny JSON program on a logical register:
//   {"seed": 1, "y_pool": 2, "a_pool": 1,
//    "qubits": [{"type": "Z-cut", "label": "+", "pooled": false,
//                "contact": false}, ...],
//    "ops": [{"op": "cnot", "qubits": [0, 1]},
//            {"op": "measure", "qubit": 0, "basis": "Z"},
//            {"op": "inject", "qubit": 2, "theta": 0.785},
//            {"op": "s"|"t"|"h"|"rx", "qubit": 0},
//            {"op": "distill_y"|"distill_a", "qubits": [...]}]}
// Returns a JSON report with per-op outcomes and the fix-up log.
std::string run_logical_program(const std::string& program_json);

}  // namespace experiments
}  // namespace holosurf

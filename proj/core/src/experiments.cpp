#include "holosurf/experiments.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "holosurf/oracle.hpp"
#include "holosurf/protocols.hpp"
#include "holosurf/version.hpp"

namespace holosurf {
namespace experiments {

using nlohmann::json;

uint64_t fnv1a_hash(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string artifact_header(const std::string& config_echo, uint64_t seed) {
  std::ostringstream os;
  os << "# holosurf " << kVersion << "\n";
  os << "# config_hash=" << std::hex << fnv1a_hash(config_echo) << std::dec
     << "\n";
  os << "# seed=" << seed << "\n";
  return os.str();
}

namespace {

struct FlatFrame {
  std::vector<uint8_t> x, z;
  explicit FlatFrame(std::size_t n) : x(n, 0), z(n, 0) {}
  PauliOp to_pauli() const {
    PauliOp p;
    for (std::size_t q = 0; q < x.size(); ++q) {
      const int code = (x[q] ? 1 : 0) | (z[q] ? 2 : 0);
      if (code) p.set_factor(static_cast<QubitId>(q), static_cast<Axis>(code));
    }
    return p;
  }
};

}  // namespace

MemoryResult memory_monte_carlo(const MemoryParams& prm) {
  const Lattice lat = Lattice::build(prm.L);
  const Decoder dec(lat);
  const int rounds = prm.rounds > 0 ? prm.rounds : prm.L;

  PauliOp logical_x, logical_z;
  for (int c = 0; c < lat.grid_extent(); c += 2) {
    logical_x.set_factor(lat.qubit_at({0, c}), Axis::X);
  }
  for (int r = 0; r < lat.grid_extent(); r += 2) {
    logical_z.set_factor(lat.qubit_at({r, 0}), Axis::Z);
  }

  // generator supports as flat lists for the hot loop
  const std::size_t ng = lat.num_generators();
  std::vector<std::vector<QubitId>> supports(ng);
  std::vector<bool> is_plaquette(ng);
  for (uint32_t g = 0; g < ng; ++g) {
    supports[g] = lat.generator(g).support;
    is_plaquette[g] = lat.generator(g).kind == GenKind::Zp;
  }

  auto run_range = [&](long long t0, long long t1, MemoryResult& out) {
    for (long long t = t0; t < t1; ++t) {
      Rng rng = Rng::for_trial(prm.seed, static_cast<uint64_t>(t));
      FlatFrame frame(lat.num_qubits());
      SyndromeHistory h;
      h.rounds.reserve(static_cast<std::size_t>(rounds) + 1);
      for (int r = 0; r < rounds; ++r) {
        for (std::size_t q = 0; q < lat.num_qubits(); ++q) {
          if (rng.bernoulli(prm.p)) frame.x[q] ^= 1;
          if (rng.bernoulli(prm.p)) frame.z[q] ^= 1;
        }
        std::vector<int> signs(ng, +1);
        for (uint32_t g = 0; g < ng; ++g) {
          int par = 0;
          for (QubitId q : supports[g]) {
            par ^= is_plaquette[g] ? frame.x[q] : frame.z[q];
          }
          if (rng.bernoulli(prm.p)) par ^= 1;  // measurement flip
          signs[g] = par ? -1 : +1;
        }
        h.rounds.push_back(std::move(signs));
      }
      // final perfect round
      std::vector<int> signs(ng, +1);
      for (uint32_t g = 0; g < ng; ++g) {
        int par = 0;
        for (QubitId q : supports[g]) {
          par ^= is_plaquette[g] ? frame.x[q] : frame.z[q];
        }
        signs[g] = par ? -1 : +1;
      }
      h.rounds.push_back(std::move(signs));

      const auto res =
          dec.decide_and_correct(h, frame.to_pauli(), logical_x, logical_z);
      if (res.failure_x) ++out.failures_x;
      if (res.failure_z) ++out.failures_z;
      if (res.failure_x || res.failure_z) ++out.failures_any;
    }
    out.trials = t1 - t0;
  };

  const int workers = std::max(1, prm.workers);
  std::vector<MemoryResult> parts(static_cast<std::size_t>(workers));
  if (workers == 1) {
    run_range(0, prm.trials, parts[0]);
  } else {
    std::vector<std::thread> pool;
    const long long chunk = (prm.trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const long long t0 = std::min<long long>(prm.trials, w * chunk);
      const long long t1 = std::min<long long>(prm.trials, t0 + chunk);
      pool.emplace_back(run_range, t0, t1, std::ref(parts[static_cast<std::size_t>(w)]));
    }
    for (auto& th : pool) th.join();
  }
  MemoryResult total;
  for (const auto& part : parts) {
    total.trials += part.trials;
    total.failures_x += part.failures_x;
    total.failures_z += part.failures_z;
    total.failures_any += part.failures_any;
  }
  return total;
}

double one_sided_z_score(const MemoryResult& smaller,
                         const MemoryResult& larger) {
  const double p1 = larger.rate();
  const double p2 = smaller.rate();
  const double v1 = p1 * (1 - p1) / static_cast<double>(larger.trials);
  const double v2 = p2 * (1 - p2) / static_cast<double>(smaller.trials);
  const double sigma = std::sqrt(v1 + v2);
  if (sigma == 0.0) return 0.0;
  return (p1 - p2) / sigma;
}

MovementResult movement_vote_monte_carlo(const MovementParams& prm) {
  MovementResult out;
  out.trials = prm.trials;
  const std::size_t nrows = static_cast<std::size_t>(prm.d / 4);
  const std::size_t ncols = static_cast<std::size_t>(prm.d / 8);
  Rng rng(prm.seed);
  std::vector<std::vector<int>> rows(nrows, std::vector<int>(ncols, +1));
  for (long long t = 0; t < prm.trials; ++t) {
    const std::size_t bad = rng.next_below(nrows);
    for (std::size_t r = 0; r < nrows; ++r) {
      for (std::size_t c = 0; c < ncols; ++c) {
        int v = r == bad ? -1 : +1;
        if (rng.bernoulli(prm.p)) v = -v;
        rows[r][c] = v;
      }
    }
    if (!movement_vote(rows, prm.d).trigger_full_ec) ++out.misses;
  }
  return out;
}

namespace {

ExponentFit fit_exponent(const std::vector<int>& ds,
                         const std::vector<double>& rates,
                         const std::vector<int>& exponents, double p) {
  ExponentFit fit;
  fit.ds = ds;
  fit.rates = rates;
  double sx = 0, sy = 0, sxy = 0, sxx = 0;
  const double n = static_cast<double>(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double x = exponents[i];
    const double y = std::log(rates[i]);
    sx += x;
    sy += y;
    sxy += x * y;
    sxx += x * x;
  }
  fit.fitted_step = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.ratio = fit.fitted_step / std::log(p);
  return fit;
}

}  // namespace

ExponentFit movement_exponent_fit(const std::vector<int>& ds, double p,
                                  long long trials_base, uint64_t seed) {
  std::vector<double> rates;
  std::vector<int> exponents;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    MovementParams prm;
    prm.d = ds[i];
    prm.p = p;
    // deeper votes miss exponentially more rarely: scale the sample count
    prm.trials = trials_base << (2 * i);
    prm.seed = seed + i;
    const auto res = movement_vote_monte_carlo(prm);
    rates.push_back(std::max(res.miss_rate(), 1e-12));
    exponents.push_back(ds[i] / 16 + 1);
  }
  return fit_exponent(ds, rates, exponents, p);
}

InjectionVoteResult injection_vote_monte_carlo(int d, double p,
                                               long long trials,
                                               uint64_t seed) {
  if (d % 4 != 0) throw std::invalid_argument("d must be a multiple of 4");
  InjectionVoteResult out;
  out.trials = trials;
  const int n = d / 4;
  Rng rng(seed);
  std::vector<int> outcomes(static_cast<std::size_t>(n));
  for (long long t = 0; t < trials; ++t) {
    for (auto& v : outcomes) v = rng.bernoulli(p) ? -1 : +1;
    try {
      if (contact_vote(outcomes) < 0) ++out.wrong;
    } catch (const std::runtime_error&) {
      ++out.ties;
    }
  }
  return out;
}

ExponentFit injection_exponent_fit(const std::vector<int>& ds, double p,
                                   long long trials_base, uint64_t seed) {
  std::vector<double> rates;
  std::vector<int> exponents;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto res = injection_vote_monte_carlo(
        ds[i], p, trials_base << (2 * i), seed + i);
    rates.push_back(std::max(
        static_cast<double>(res.wrong) / static_cast<double>(res.trials),
        1e-12));
    exponents.push_back(ds[i] / 8 + 1);
  }
  return fit_exponent(ds, rates, exponents, p);
}

std::string rate_curve_csv(const RateCurveConfig& cfg,
                           const std::string& header) {
  std::ostringstream os;
  os << header;
  os << "d,cbJ,m,P_L_m\n";
  for (int d : cfg.ds) {
    for (double cbJ : cfg.cbJs) {
      for (long long m : cfg.ms) {
        try {
          const double r = analysis::logical_rate({d, m, cfg.p, cbJ});
          os << d << ',' << cbJ << ',' << m << ',' << r << '\n';
        } catch (const std::domain_error&) {
          // outside the regime of validity
        }
      }
    }
  }
  return os.str();
}

std::string estimate_report_json(const analysis::ResourceQuery& rq,
                                 const std::string& config_echo) {
  const auto est = analysis::estimate_resources(rq);
  json j;
  j["version"] = std::string(kVersion);
  j["config_hash"] = fnv1a_hash(config_echo);
  j["query"] = {{"M", rq.M},
                {"delta", rq.delta},
                {"p", rq.p},
                {"cbJ", rq.cbJ},
                {"m_grid", rq.m_grid}};
  j["estimate"] = {{"d", est.d},
                   {"m", est.m},
                   {"n_tot", est.n_tot},
                   {"rate", est.rate},
                   {"budget", est.budget}};
  return j.dump(2);
}

BraidCheckReport braid_check(int L) {
  BraidCheckReport rep;
  const Lattice lat = Lattice::build(L);
  Tableau tab = Tableau::from_lattice(lat);
  DeformationContext ctx(lat, tab);
  const std::size_t control = ctx.create_defect(CutKind::ZCut, {6, 5}, {6, 1});
  const std::size_t target =
      ctx.create_defect(CutKind::XCut, {13, 12}, {13, 22});
  ctx.enlarge_hole(control, 0, 8);
  ctx.enlarge_hole(target, 0, 8);
  const auto res = ctx.braid(control, target);
  auto line = [&](const char* name, bool ok) {
    rep.lines.push_back(std::string(name) + (ok ? ": ok" : ": MISMATCH"));
  };
  line("X_control -> X_control X_target", res.report.x_control);
  line("X_target  -> X_target", res.report.x_target);
  line("Z_control -> Z_control", res.report.z_control);
  line("Z_target  -> Z_control Z_target", res.report.z_target);
  rep.lines.push_back("steps executed: " + std::to_string(res.steps.size()));
  rep.ok = res.report.all();
  tab.check_invariants(4);
  return rep;
}

OracleVerifyReport oracle_verify(double base_time, int doublings) {
  using namespace oracle;
  OracleVerifyReport rep;
  const std::vector<PauliOp> gens = {
      PauliOp::parse("+ Z0 Z1"), PauliOp::parse("+ Z1 Z2"),
      PauliOp::parse("+ Z2 Z3"), PauliOp::parse("+ Z3 Z4"),
      PauliOp::parse("+ Z4 Z5")};
  DenseSystem sys(6, gens);
  const PauliOp q1 = PauliOp::parse("+ X0");

  SchedulePolicy sched;
  sched.smoothness = 4;
  sched.total_time = 40.0;

  // single-step endpoint against the Clifford prediction
  {
    const State psi0 = sys.ground_state();
    State psi = psi0;
    sys.integrate_step({q1}, sched, psi);
    rep.endpoint_fidelity =
        fidelity(sys.apply_step_clifford({q1}, psi0), psi);
  }
  // mid-run error against the propagated-error prediction
  {
    const PauliOp q2 = PauliOp::parse("+ X5");
    const PauliOp err = PauliOp::parse("+ Z5");
    const State psi0 = sys.ground_state();
    State psi = psi0;
    DenseSystem frame = sys;
    sys.integrate_step({q1}, sched, psi);
    frame.conjugate_generators({q1});
    psi = apply_pauli_state(err, psi);
    frame.integrate_step({q2}, sched, psi);

    State pred = sys.apply_step_clifford({q1}, psi0);
    pred = sys.apply_step_clifford({q2}, pred);
    pred = apply_pauli_state(conjugate_by_rotation(err, q2), pred);
    rep.propagated_fidelity = fidelity(pred, psi);
  }
  // parallel set against the serial composition
  {
    const PauliOp qa = PauliOp::parse("+ X0");
    const PauliOp qb = PauliOp::parse("+ X5");
    const State psi0 = sys.ground_state();
    State par = psi0;
    sys.integrate_step({qa, qb}, sched, par);
    State pred = sys.apply_step_clifford({qa}, psi0);
    pred = sys.apply_step_clifford({qb}, pred);
    rep.parallel_matches = fidelity(pred, par) > 1.0 - 1e-3;
  }
  // error against doubling evolution times
  {
    std::vector<double> times;
    for (int k = 0; k <= doublings; ++k) {
      times.push_back(base_time * static_cast<double>(1 << k));
    }
    const auto curve = adiabatic_error_curve(sys, {q1}, 4, times);
    rep.delta_monotone = true;
    std::ostringstream csv;
    csv << "T,smoothness,delta_ad,fidelity\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
      csv << curve[i].total_time << ',' << curve[i].smoothness << ','
          << curve[i].delta_ad << ',' << curve[i].fid << '\n';
      if (i > 0 && curve[i - 1].delta_ad > 1e-12 &&
          curve[i].delta_ad >= curve[i - 1].delta_ad) {
        rep.delta_monotone = false;
      }
    }
    rep.curve_csv = csv.str();
  }
  rep.ok = rep.endpoint_fidelity > 1.0 - 1e-3 &&
           rep.propagated_fidelity > 1.0 - 1e-2 && rep.parallel_matches &&
           rep.delta_monotone;
  rep.lines.push_back("single-step fidelity: " +
                      std::to_string(rep.endpoint_fidelity));
  rep.lines.push_back("propagated-error fidelity: " +
                      std::to_string(rep.propagated_fidelity));
  rep.lines.push_back(std::string("parallel set matches serial: ") +
                      (rep.parallel_matches ? "yes" : "NO"));
  rep.lines.push_back(std::string("delta_ad monotone under doubling: ") +
                      (rep.delta_monotone ? "yes" : "NO"));
  return rep;
}

ScheduleRunReport oracle_run_schedule(
    const std::vector<std::string>& generators,
    const std::string& schedule_json_text, double total_time_scale) {
  using namespace oracle;
  std::vector<PauliOp> gens;
  QubitId max_q = 0;
  for (const auto& text : generators) {
    gens.push_back(PauliOp::parse(text));
    for (const auto& [q, a] : gens.back().support()) max_q = std::max(max_q, q);
  }
  const auto steps = schedule_from_json(schedule_json_text);
  for (const auto& s : steps) {
    if (!s.toggles.empty()) {
      throw std::invalid_argument(
          "dense runs support rotation-only schedules");
    }
    for (const auto& r : s.rotations) {
      for (const auto& [q, a] : r.support()) max_q = std::max(max_q, q);
    }
  }
  DenseSystem sys(max_q + 1, gens);
  State psi = sys.ground_state();
  State predicted = psi;
  DenseSystem frame = sys;
  for (const auto& s : steps) {
    SchedulePolicy sched;
    sched.smoothness = s.schedule.smoothness;
    sched.total_time = s.schedule.total_time * total_time_scale;
    frame.integrate_step(s.rotations, sched, psi);
    frame.conjugate_generators(s.rotations);
    predicted = sys.apply_step_clifford(s.rotations, predicted);
  }
  ScheduleRunReport rep;
  rep.steps = steps.size();
  rep.fid = fidelity(predicted, psi);
  json j;
  j["steps"] = rep.steps;
  j["fidelity"] = rep.fid;
  rep.summary_json = j.dump(2);
  return rep;
}

ReplayReport replay_events(int L, const std::vector<ErrorEvent>& events) {
  const Lattice lat = Lattice::build(L);
  const Decoder dec(lat);
  long long max_step = 0;
  for (const auto& e : events) max_step = std::max(max_step, e.step);

  PauliOp logical_x, logical_z;
  for (int c = 0; c < lat.grid_extent(); c += 2) {
    logical_x.set_factor(lat.qubit_at({0, c}), Axis::X);
  }
  for (int r = 0; r < lat.grid_extent(); r += 2) {
    logical_z.set_factor(lat.qubit_at({r, 0}), Axis::Z);
  }

  PauliOp frame;
  SyndromeHistory h;
  for (long long step = 0; step <= max_step; ++step) {
    for (const auto& e : events) {
      if (e.step == step) frame = frame * PauliOp::single(e.qubit, e.axis);
    }
    std::vector<int> signs(lat.num_generators(), +1);
    for (uint32_t g = 0; g < lat.num_generators(); ++g) {
      if (!lat.generator(g).pauli().commutes_with(frame)) signs[g] = -1;
    }
    h.rounds.push_back(std::move(signs));
  }
  const auto res = dec.decide_and_correct(h, frame.bare(), logical_x, logical_z);

  ReplayReport rep;
  rep.rounds = max_step + 1;
  rep.events = static_cast<long long>(events.size());
  rep.failure_x = res.failure_x;
  rep.failure_z = res.failure_z;
  json j;
  j["rounds"] = rep.rounds;
  j["events"] = rep.events;
  j["failure_x"] = rep.failure_x;
  j["failure_z"] = rep.failure_z;
  j["correction"] = res.correction.str();
  rep.summary_json = j.dump(2);
  return rep;
}

std::string lattice_json(const Lattice& lat,
                         const std::vector<DefectQubit>& defects) {
  json j;
  j["L"] = lat.L();
  j["num_qubits"] = lat.num_qubits();
  json qs = json::array();
  for (QubitId q = 0; q < lat.num_qubits(); ++q) {
    const GridPos p = lat.qubit_pos(q);
    qs.push_back({{"id", q}, {"row", p.row}, {"col", p.col}});
  }
  j["qubits"] = qs;
  json gs = json::array();
  for (uint32_t g = 0; g < lat.num_generators(); ++g) {
    const auto& def = lat.generator(g);
    gs.push_back({{"id", g},
                  {"kind", def.kind == GenKind::Xs ? "X_s" : "Z_p"},
                  {"row", def.pos.row},
                  {"col", def.pos.col},
                  {"support", def.support}});
  }
  j["generators"] = gs;
  json ds = json::array();
  for (const auto& dq : defects) {
    json holes = json::array();
    for (const auto& h : dq.holes) {
      holes.push_back({{"row", h.anchor.row},
                       {"col", h.anchor.col},
                       {"width", h.width},
                       {"height", h.height}});
    }
    ds.push_back({{"kind", dq.kind == CutKind::XCut ? "X-cut" : "Z-cut"},
                  {"holes", holes},
                  {"distance", dq.distance},
                  {"logical_x", dq.logical_x.str()},
                  {"logical_z", dq.logical_z.str()},
                  {"init_label", dq.init_label}});
  }
  j["defects"] = ds;
  return j.dump(2);
}

std::string tableau_json(const Tableau& tab) {
  json j;
  json rows = json::array();
  for (const auto& r : tab.rows()) {
    rows.push_back({{"op", r.op.str()}, {"sign", r.sign}, {"active", r.active}});
  }
  j["generators"] = rows;
  json logicals = json::array();
  for (const auto& l : tab.logicals()) {
    logicals.push_back({{"x", l.x.str()}, {"z", l.z.str()}, {"tag", l.tag}});
  }
  j["logicals"] = logicals;
  return j.dump(2);
}

std::string schedule_json(const std::vector<DeformationStep>& steps) {
  json arr = json::array();
  for (const auto& s : steps) {
    json toggles = json::array();
    for (const auto& t : s.toggles) {
      json jt = {{"op", t.op.str()}, {"on", t.on}};
      if (t.declared_sign) jt["declared_sign"] = *t.declared_sign;
      toggles.push_back(jt);
    }
    json rots = json::array();
    for (const auto& r : s.rotations) rots.push_back(r.str());
    arr.push_back({{"toggles", toggles},
                   {"rotations", rots},
                   {"schedule",
                    {{"smoothness", s.schedule.smoothness},
                     {"total_time", s.schedule.total_time}}}});
  }
  json j;
  j["steps"] = arr;
  return j.dump(2);
}

std::vector<DeformationStep> schedule_from_json(const std::string& text) {
  const json j = json::parse(text);
  std::vector<DeformationStep> steps;
  for (const auto& s : j.at("steps")) {
    DeformationStep step;
    for (const auto& t : s.at("toggles")) {
      ToggleSpec spec;
      spec.op = PauliOp::parse(t.at("op").get<std::string>());
      spec.on = t.at("on").get<bool>();
      if (t.contains("declared_sign")) {
        spec.declared_sign = t.at("declared_sign").get<int>();
      }
      step.toggles.push_back(std::move(spec));
    }
    for (const auto& r : s.at("rotations")) {
      step.rotations.push_back(PauliOp::parse(r.get<std::string>()));
    }
    if (s.contains("schedule")) {
      step.schedule.smoothness = s.at("schedule").at("smoothness").get<int>();
      step.schedule.total_time =
          s.at("schedule").at("total_time").get<double>();
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

std::string run_logical_program(const std::string& program_json) {
  using protocols::LogicalRegister;
  const json prog = json::parse(program_json);
  const auto& qubit_spec = prog.at("qubits");
  LogicalRegister reg(qubit_spec.size(), prog.value("seed", 1ULL));
  for (std::size_t q = 0; q < qubit_spec.size(); ++q) {
    const auto& spec = qubit_spec[q];
    const CutKind type = spec.value("type", std::string("Z-cut")) == "X-cut"
                             ? CutKind::XCut
                             : CutKind::ZCut;
    const std::string label = spec.value("label", std::string("0"));
    reg.declare(q, type, label.at(0), spec.value("pooled", false),
                spec.value("contact", false));
  }
  reg.stock_y(prog.value("y_pool", 0));
  reg.stock_a(prog.value("a_pool", 0));

  json results = json::array();
  for (const auto& op : prog.value("ops", json::array())) {
    const std::string name = op.at("op").get<std::string>();
    json entry = {{"op", name}};
    if (name == "cnot") {
      const auto qs = op.at("qubits").get<std::vector<std::size_t>>();
      const auto res = reg.cnot(qs.at(0), qs.at(1));
      entry["control"] = res.control;
      entry["target"] = res.target;
    } else if (name == "measure") {
      const std::string basis = op.value("basis", std::string("Z"));
      entry["outcome"] = reg.measure_logical(op.at("qubit").get<std::size_t>(),
                                             axis_from_char(basis.at(0)));
    } else if (name == "inject") {
      reg.inject(op.at("qubit").get<std::size_t>(),
                 op.at("theta").get<double>());
    } else if (name == "s") {
      reg.apply_s(op.at("qubit").get<std::size_t>());
    } else if (name == "t") {
      reg.apply_t(op.at("qubit").get<std::size_t>());
    } else if (name == "h") {
      reg.apply_h(op.at("qubit").get<std::size_t>());
    } else if (name == "rx") {
      reg.apply_rx(op.at("qubit").get<std::size_t>());
    } else if (name == "distill_y" || name == "distill_a") {
      const auto qs = op.at("qubits").get<std::vector<std::size_t>>();
      const auto out = name == "distill_y" ? reg.distill_y(qs)
                                           : reg.distill_a(qs);
      entry["accepted"] = out.accepted;
      entry["output"] = out.output;
    } else {
      throw std::invalid_argument("unknown program op: " + name);
    }
    results.push_back(std::move(entry));
  }

  json rep;
  rep["version"] = std::string(kVersion);
  rep["results"] = results;
  rep["fixups"] = reg.fixup_log();
  json final_qubits = json::array();
  for (std::size_t q = 0; q < reg.size(); ++q) {
    const auto& lq = reg.qubit(q);
    json jq = {{"type", lq.type == CutKind::XCut ? "X-cut" : "Z-cut"},
               {"pooled", lq.pooled},
               {"magic", lq.magic.has_value()}};
    if (lq.magic) {
      jq["theta"] = lq.magic->theta;
      jq["infidelity"] = lq.magic->infidelity;
    }
    final_qubits.push_back(std::move(jq));
  }
  rep["qubits"] = final_qubits;
  rep["y_pool"] = reg.y_pool();
  rep["a_pool"] = reg.a_pool();
  return rep.dump(2);
}

std::string matching_json(const Decoder::KindDecode& decode) {
  json j;
  json events = json::array();
  for (const auto& e : decode.events) {
    events.push_back({{"gen", e.gen}, {"round", e.round}});
  }
  j["events"] = events;
  json mates = json::array();
  for (int m : decode.matching.mate) mates.push_back(m);
  j["mate"] = mates;
  j["weight"] = decode.matching.weight;
  j["correction"] = decode.correction.str();
  return j.dump(2);
}

}  // namespace experiments
}  // namespace holosurf

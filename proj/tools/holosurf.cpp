// Batch experiment runner: configuration in, CSV/JSON artifacts out.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "holosurf/distillation.hpp"
#include "holosurf/rng.hpp"
#include "holosurf/experiments.hpp"
#include "holosurf/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace holosurf;

namespace {

struct CommonOpts {
  std::string config_path;
  uint64_t seed = 1;
  long long trials = -1;  // -1: keep the config's value
  int workers = 1;
  std::string out_dir = ".";
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json j;
  in >> j;
  return j;
}

void write_artifact(const CommonOpts& opts, const std::string& name,
                    const std::string& content) {
  fs::create_directories(opts.out_dir);
  const fs::path path = fs::path(opts.out_dir) / name;
  std::ofstream out(path);
  out << content;
  std::cout << "wrote " << path.string() << "\n";
}

GridPos pos_from(const json& j) {
  return GridPos{j.at(0).get<int>(), j.at(1).get<int>()};
}

int run_build_lattice(const CommonOpts& opts, const json& cfg) {
  const int L = cfg.value("L", 8);
  const Lattice lat = Lattice::build(L);
  Tableau tab = Tableau::from_lattice(lat);
  DeformationContext ctx(lat, tab);
  std::vector<DefectQubit> defects;
  if (cfg.contains("defects")) {
    for (const auto& dj : cfg.at("defects")) {
      const CutKind kind =
          dj.at("kind").get<std::string>() == "X-cut" ? CutKind::XCut
                                                      : CutKind::ZCut;
      const std::size_t d = ctx.create_defect(kind, pos_from(dj.at("pos1")),
                                              pos_from(dj.at("pos2")));
      if (dj.contains("enlarge_to")) {
        ctx.enlarge_hole(d, 0, dj.at("enlarge_to").get<int>());
      }
      defects.push_back(ctx.defect_snapshot(d));
    }
  }
  tab.check_invariants(4);
  write_artifact(opts, "lattice.json",
                 experiments::lattice_json(lat, defects));
  return 0;
}

int run_braid_check(const CommonOpts& opts, const json& cfg) {
  const auto rep = experiments::braid_check(cfg.value("L", 12));
  for (const auto& line : rep.lines) std::cout << line << "\n";
  std::ostringstream os;
  for (const auto& line : rep.lines) os << line << "\n";
  write_artifact(opts, "braid_check.txt", os.str());
  return rep.ok ? 0 : 1;
}

int run_rate_curve(const CommonOpts& opts, const json& cfg) {
  experiments::RateCurveConfig rc;
  if (cfg.contains("ds")) rc.ds = cfg.at("ds").get<std::vector<int>>();
  if (cfg.contains("cbJs")) rc.cbJs = cfg.at("cbJs").get<std::vector<double>>();
  if (cfg.contains("ms")) rc.ms = cfg.at("ms").get<std::vector<long long>>();
  rc.p = cfg.value("p", 1e-3);
  write_artifact(
      opts, "rate_curve.csv",
      experiments::rate_curve_csv(rc, experiments::artifact_header(cfg.dump(),
                                                                   opts.seed)));
  return 0;
}

int run_estimate(const CommonOpts& opts, const json& cfg) {
  analysis::ResourceQuery rq;
  rq.M = cfg.value("M", 1e14);
  rq.delta = cfg.value("delta", 0.1);
  rq.p = cfg.value("p", 1e-3);
  rq.cbJ = cfg.value("cbJ", 12.0);
  if (cfg.contains("m_grid")) {
    rq.m_grid = cfg.at("m_grid").get<std::vector<long long>>();
  }
  const std::string report = experiments::estimate_report_json(rq, cfg.dump());
  std::cout << report << "\n";
  write_artifact(opts, "estimate.json", report);
  return 0;
}

int run_oracle_verify(const CommonOpts& opts, const json& cfg) {
  const auto rep = experiments::oracle_verify(cfg.value("base_time", 5.0),
                                              cfg.value("doublings", 4));
  for (const auto& line : rep.lines) std::cout << line << "\n";
  write_artifact(opts, "adiabatic_curve.csv",
                 experiments::artifact_header(cfg.dump(), opts.seed) +
                     rep.curve_csv);
  bool schedule_ok = true;
  if (cfg.contains("schedule")) {
    // dense run of a serialized schedule on an explicit toy system
    std::ifstream in(cfg.at("schedule").get<std::string>());
    if (!in) {
      std::cerr << "cannot open schedule file\n";
      return 2;
    }
    std::stringstream text;
    text << in.rdbuf();
    const auto sched_rep = experiments::oracle_run_schedule(
        cfg.at("generators").get<std::vector<std::string>>(), text.str(),
        cfg.value("time_scale", 1.0));
    std::cout << "schedule steps: " << sched_rep.steps
              << ", endpoint fidelity: " << sched_rep.fid << "\n";
    write_artifact(opts, "schedule_run.json", sched_rep.summary_json);
    schedule_ok = sched_rep.fid > 1.0 - 1e-2;
  }
  return rep.ok && schedule_ok ? 0 : 1;
}

int run_montecarlo(const CommonOpts& opts, const json& cfg) {
  const std::string experiment = cfg.value("experiment", "memory");
  const std::string header =
      experiments::artifact_header(cfg.dump(), opts.seed);
  std::ostringstream csv;
  csv << header;

  if (experiment == "memory") {
    csv << "L,p,rounds,trials,failures_x,failures_z,failures_any,rate\n";
    const auto Ls = cfg.value("L_list", std::vector<int>{3, 5});
    const double p = cfg.value("p", 1e-3);
    const int rounds = cfg.value("rounds", 0);
    long long trials = cfg.value("trials", 100000LL);
    if (opts.trials >= 0) trials = opts.trials;
    for (int L : Ls) {
      if (trials == 0) break;  // empty CSV with header only
      experiments::MemoryParams prm;
      prm.L = L;
      prm.p = p;
      prm.rounds = rounds;
      prm.trials = trials;
      prm.seed = opts.seed;
      prm.workers = opts.workers;
      const auto res = experiments::memory_monte_carlo(prm);
      csv << L << ',' << p << ',' << (rounds > 0 ? rounds : L) << ','
          << res.trials << ',' << res.failures_x << ',' << res.failures_z
          << ',' << res.failures_any << ',' << res.rate() << '\n';
    }
  } else if (experiment == "movement") {
    csv << "d,p,trials,misses,miss_rate\n";
    const auto ds = cfg.value("ds", std::vector<int>{16, 32, 48});
    const double p = cfg.value("p", 0.03);
    long long trials = cfg.value("trials", 200000LL);
    if (opts.trials >= 0) trials = opts.trials;
    if (trials > 0) {
      const auto fit =
          experiments::movement_exponent_fit(ds, p, trials, opts.seed);
      for (std::size_t i = 0; i < fit.ds.size(); ++i) {
        csv << fit.ds[i] << ',' << p << ',' << (trials << (2 * i)) << ','
            << static_cast<long long>(fit.rates[i] * (trials << (2 * i)) + 0.5)
            << ',' << fit.rates[i] << '\n';
      }
      csv << "# fitted_exponent_ratio=" << fit.ratio << "\n";
    }
  } else if (experiment == "injection") {
    csv << "d,p,trials,wrong,ties,rate\n";
    const auto ds = cfg.value("ds", std::vector<int>{8, 16, 24});
    const double p = cfg.value("p", 0.05);
    long long trials = cfg.value("trials", 200000LL);
    if (opts.trials >= 0) trials = opts.trials;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (trials == 0) break;
      const auto res = experiments::injection_vote_monte_carlo(
          ds[i], p, trials << (2 * i), opts.seed + i);
      csv << ds[i] << ',' << p << ',' << res.trials << ',' << res.wrong << ','
          << res.ties << ','
          << static_cast<double>(res.wrong) / static_cast<double>(res.trials)
          << '\n';
    }
  } else if (experiment == "distill") {
    csv << "code,p_in,accept_prob,p_out,trials,sampled_accepts,sampled_flips\n";
    const auto ps = cfg.value("ps", std::vector<double>{1e-2, 3e-3, 1e-3});
    long long trials = cfg.value("trials", 100000LL);
    if (opts.trials >= 0) trials = opts.trials;
    Rng rng(opts.seed);
    for (const char* name : {"Y", "A"}) {
      const auto code = std::string(name) == "Y"
                            ? protocols::DistillationCode::steane_y()
                            : protocols::DistillationCode::rm15_a();
      for (double p : ps) {
        const auto stats = protocols::distill_exact(
            code, std::vector<double>(static_cast<std::size_t>(code.n), p));
        long long accepts = 0, flips = 0;
        for (long long t = 0; t < trials; ++t) {
          uint32_t pattern = 0;
          for (int k = 0; k < code.n; ++k) {
            if (rng.bernoulli(p)) pattern |= 1u << k;
          }
          const auto r = protocols::run_pattern(code, pattern);
          if (r.accepted) {
            ++accepts;
            if (r.output_flipped) ++flips;
          }
        }
        csv << name << ',' << p << ',' << stats.accept_prob << ','
            << stats.output_infidelity << ',' << trials << ',' << accepts
            << ',' << flips << '\n';
      }
    }
  } else {
    std::cerr << "unknown experiment: " << experiment << "\n";
    return 2;
  }
  write_artifact(opts, "montecarlo_" + experiment + ".csv", csv.str());
  return 0;
}

int run_program(const CommonOpts& opts, const json& cfg) {
  json prog = cfg;
  if (cfg.contains("program")) {  // external program file
    std::ifstream in(cfg.at("program").get<std::string>());
    if (!in) {
      std::cerr << "cannot open program file\n";
      return 2;
    }
    in >> prog;
  }
  const std::string report = experiments::run_logical_program(prog.dump());
  std::cout << report << "\n";
  write_artifact(opts, "program_report.json", report);
  return 0;
}

int run_replay(const CommonOpts& opts, const json& cfg) {
  const int L = cfg.value("L", 4);
  const std::string events_path = cfg.value("events", "");
  if (events_path.empty()) {
    std::cerr << "replay needs an events CSV path in the config\n";
    return 2;
  }
  std::ifstream in(events_path);
  if (!in) {
    std::cerr << "cannot open events file: " << events_path << "\n";
    return 2;
  }
  const auto events = events_from_csv(in);
  const auto rep = experiments::replay_events(L, events);
  std::cout << rep.summary_json << "\n";
  write_artifact(opts, "replay.json", rep.summary_json);
  return (rep.failure_x || rep.failure_z) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holonomic surface-code deformation toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonOpts opts;
  app.add_option("--config", opts.config_path, "JSON config file")
      ->envname("HOLOSURF_CONFIG");
  app.add_option("--seed", opts.seed, "base RNG seed")
      ->envname("HOLOSURF_SEED");
  app.add_option("--trials", opts.trials, "override trial count")
      ->envname("HOLOSURF_TRIALS");
  app.add_option("--workers", opts.workers, "worker threads")
      ->envname("HOLOSURF_WORKERS");
  app.add_option("--out", opts.out_dir, "artifact output directory")
      ->envname("HOLOSURF_OUT");

  auto* build_lattice = app.add_subcommand("build-lattice", "geometry dump");
  auto* braid = app.add_subcommand("braid-check", "logical CNOT verification");
  auto* rate = app.add_subcommand("rate-curve", "closed-form rate grid CSV");
  auto* estimate = app.add_subcommand("estimate", "resource estimate report");
  auto* oracle = app.add_subcommand("oracle-verify",
                                    "dense-integrator consistency checks");
  auto* mc = app.add_subcommand("montecarlo", "sampled experiments");
  auto* replay = app.add_subcommand("replay", "re-decode an error-event log");
  auto* program =
      app.add_subcommand("run-program", "execute a logical program");
  for (auto* sub :
       {build_lattice, braid, rate, estimate, oracle, mc, replay, program}) {
    sub->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const json cfg = load_config(opts.config_path);
    if (build_lattice->parsed()) return run_build_lattice(opts, cfg);
    if (braid->parsed()) return run_braid_check(opts, cfg);
    if (rate->parsed()) return run_rate_curve(opts, cfg);
    if (estimate->parsed()) return run_estimate(opts, cfg);
    if (oracle->parsed()) return run_oracle_verify(opts, cfg);
    if (mc->parsed()) return run_montecarlo(opts, cfg);
    if (replay->parsed()) return run_replay(opts, cfg);
    if (program->parsed()) return run_program(opts, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

#include "snlw/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <json.hpp>
#include <numbers>

#include "snlw/errors.hpp"
#include "snlw/io.hpp"
#include "snlw/schedule.hpp"
#include "snlw/solver.hpp"
#include "snlw/verify.hpp"

namespace snlw {

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names{"simulate",           "verify-noise", "verify-commutators",
                                              "verify-propagation", "schedule",     "energy-audit"};
  return names;
}

WaveState initial_state(const ExperimentConfig& cfg) {
  const GridSpec g = cfg.grid_spec();
  const double a = cfg.initial.amplitude;
  const double w2 = cfg.initial.width * cfg.initial.width;
  WaveState w = WaveState::zero(g);
  w.v = RealField::sample(g, [a, w2](double x, double y) { return a * std::exp(-(x * x + y * y) / w2); });
  return w;
}

namespace {

namespace fs = std::filesystem;

SolverConfig solver_config(const ExperimentConfig& cfg, RealField rho) {
  SolverConfig s(std::move(rho));
  s.dt = cfg.solver.dt;
  s.picard_iters = cfg.solver.picard_iters;
  s.picard_tol = cfg.solver.picard_tol;
  s.s = cfg.schedule.s;
  s.blowup_threshold = cfg.solver.blowup_threshold;
  return s;
}

NoiseConfig noise_config(const ExperimentConfig& cfg) {
  NoiseConfig n;
  n.seed = cfg.noise.seed;
  n.cutoff_N = cfg.noise.N;
  n.grid = cfg.grid_spec();
  n.amplitude = cfg.noise.amplitude;
  return n;
}

int finish_reports(const std::vector<TestReport>& reports, const ExperimentConfig& cfg, std::ostream& out) {
  const fs::path dir(cfg.run.out);
  const std::string text = cfg.to_text();
  write_text(dir / "reports.json", reports_json(reports, text));
  write_text(dir / "summary.csv", reports_csv(reports, text));
  bool ok = true;
  for (const auto& r : reports) {
    out << (r.pass ? "PASS " : "FAIL ") << r.name << "  statistic=" << r.statistic << "  band=[" << r.band_low
        << ", " << r.band_high << "]\n";
    ok = ok && r.pass;
  }
  return ok ? kExitPass : kExitTestFailure;
}

int simulate(const ExperimentConfig& cfg, std::ostream& out) {
  const GridSpec g = cfg.grid_spec();
  const SolverConfig solver = solver_config(cfg, radial_cutoff(g, cfg.cutoff.R));
  NoiseSource noise = NoiseSource::live(noise_config(cfg));
  const GlobalRun run = run_global(WaveModes::from(initial_state(cfg)), noise, cfg.run.T, cfg.solver.window_tau,
                                   solver, cfg.schedule_params());
  const fs::path dir(cfg.run.out);
  const std::string text = cfg.to_text();
  write_text(dir / "trajectory.csv", trajectory_csv(run.records, text));
  write_text(dir / "schedule.csv", schedule_csv(run.windows, text));
  const WaveState last = run.final.state();
  write_bytes(dir / "final_v.bin", field_dump(last.v, last.t, text));
  write_bytes(dir / "final_v_t.bin", field_dump(last.v_t, last.t, text));
  out << "simulate: " << run.records.size() - 1 << " steps to t=" << last.t << ", " << run.windows.size()
      << " windows, " << run.violations() << " schedule violations, final ||v||_{H^s}="
      << run.records.back().hs_norm << "\n";
  return kExitPass;
}

int verify_noise(const ExperimentConfig& cfg, int jobs, std::ostream& out) {
  NoiseTestSetup setup;
  setup.grid = GridSpec(2.0 * std::numbers::pi, cfg.verify.n);
  setup.sigma_scale = cfg.verify.inject_sigma_fault ? 1.1 : 1.0;
  setup.jobs = jobs;
  const auto seeds = seed_range(cfg.verify.first_seed, cfg.verify.seeds);
  std::vector<TestReport> reports;
  for (int l = 1; l <= 3; ++l) {
    const MomentTestResult m = moment_bound_test(l, cfg.verify.eps, cfg.verify.p, cfg.verify.N, seeds, setup);
    reports.push_back(m.uniformity);
    reports.push_back(m.centering);
  }
  const ContinuityTestResult c =
      time_continuity_test(1, 0.2, cfg.verify.N, 0.5, {0.05, 0.1, 0.2, 0.4}, seeds, setup);
  TestReport cont = TestReport::make("continuity_l1", c.fit.slope, 0.1, INFINITY, static_cast<std::int64_t>(seeds.size()));
  cont.note("stderr_slope", c.fit.stderr_slope).note("t0", 0.5).note("eps", 0.2);
  reports.push_back(cont);
  return finish_reports(reports, cfg, out);
}

int verify_commutators(const ExperimentConfig& cfg, std::ostream& out) {
  const GridSpec g(2.0 * std::numbers::pi, 512);
  const std::vector<double> N_list{8, 16, 32, 64};
  const auto seeds = seed_range(cfg.verify.first_seed, 3);
  std::vector<TestReport> reports;
  for (bool mixed : {false, true}) {
    const std::vector<int> ks = mixed ? std::vector<int>{1, 2} : std::vector<int>{1, 2, 3};
    for (const auto& f : commutator_slope_suite({cfg.schedule.s}, ks, N_list, seeds, g, mixed)) {
      const std::string name = std::string(mixed ? "mixed_commutator_k" : "commutator_k") + std::to_string(f.k);
      if (!mixed && f.k == 1) {
        double worst = 0.0;
        for (double x : f.statistic) worst = std::max(worst, x);
        reports.push_back(TestReport::make(name, worst, 0.0, 0.0, static_cast<std::int64_t>(seeds.size())));
      } else {
        TestReport r = TestReport::make(name, f.fit.slope, -INFINITY, f.bound, static_cast<std::int64_t>(seeds.size()));
        r.note("stderr_slope", f.fit.stderr_slope).note("s", f.s);
        reports.push_back(r);
      }
    }
  }
  return finish_reports(reports, cfg, out);
}

int verify_propagation(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  const GridSpec g = cfg.grid_spec();
  const double T = cfg.run.T;
  const double inner = 2.0 * T;
  const double outer = inner + 1.0;
  const double width = 4.0;
  if (4.0 * (T + outer + width) > g.L() * (1.0 + 1e-12)) {
    err << "verify-propagation: the box L = " << g.L() << " is below 4 (T + " << outer + width
        << "), so the observation cone could wrap\n";
    return kExitConfigError;
  }
  const RealField rho1 = radial_cutoff(g, inner, width);
  const RealField rho2 = radial_cutoff(g, outer, width);
  RealField dented = rho1;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      const double r = std::hypot(g.coordinate(i) - 0.5 * T, g.coordinate(j));
      dented(i, j) *= 1.0 - 0.5 * (1.0 - smooth_transition(2.0 * r));
    }

  PropagationSetup setup;
  setup.noise = noise_config(cfg);
  setup.dt = cfg.solver.dt;
  setup.picard_iters = cfg.solver.picard_iters;
  setup.picard_tol = cfg.solver.picard_tol;
  setup.s = cfg.schedule.s;
  setup.blowup_threshold = cfg.solver.blowup_threshold;
  setup.initial = initial_state(cfg);

  TestReport same = propagation_test(rho1, rho2, T, inner, cfg.noise.seed, setup);
  TestReport control = propagation_test(rho1, dented, T, inner, cfg.noise.seed, setup);
  const double threshold = 100.0 * same.band_high;
  TestReport neg = TestReport::make("propagation_control", control.statistic, threshold, INFINITY, 1);
  neg.metadata = control.metadata;
  neg.note("meaning", "cutoffs differ inside B_{2T}; discrepancy must exceed 100x the tolerance band");
  return finish_reports({same, neg}, cfg, out);
}

int schedule(const ExperimentConfig& cfg, std::ostream& out) {
  const ScheduleParams p = cfg.schedule_params();
  const WaveModes w = WaveModes::from(initial_state(cfg));
  const double u0 = norm_hs(w.v, p.s);
  const double u1 = norm_hs(w.v_t, p.s - 1.0);
  const int windows = static_cast<int>(std::ceil(cfg.run.T / cfg.solver.window_tau - 1e-9));
  const auto ladder = schedule_ladder(u0, u1, p, windows);

  nlohmann::ordered_json doc;
  doc["format_version"] = kArtifactFormatVersion;
  doc["config"] = cfg.to_text();
  doc["s"] = p.s;
  doc["alpha"] = p.alpha;
  doc["beta"] = p.beta;
  doc["margin"] = p.margin;
  doc["u0_norm"] = u0;
  doc["u1_norm"] = u1;
  bool ok = check_initial(u0, u1, ladder.front(), p).holds();
  out << "schedule s=" << p.s << " alpha=" << p.alpha << " beta=" << p.beta << " margin=" << p.margin << "\n";
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    nlohmann::ordered_json step;
    step["window"] = k;
    step["log2_N"] = ladder[k].exponent;
    out << "N_" << k + 1 << " = 2^" << ladder[k].exponent;
    if (k + 1 < ladder.size()) {
      const ScheduleCheck c = check_step(ladder[k], ladder[k + 1], p);
      step["next_lhs_log2"] = c.lhs_log2;
      step["next_rhs_log2"] = c.rhs_log2;
      step["next_holds"] = c.holds();
      ok = ok && c.holds() && ladder[k + 1].exponent > ladder[k].exponent;
      out << "   (next: lhs 2^" << c.lhs_log2 << " <= rhs 2^" << c.rhs_log2 << (c.holds() ? ")" : ") VIOLATED");
    }
    out << "\n";
    doc["ladder"].push_back(step);
  }
  doc["verified"] = ok;
  write_text(fs::path(cfg.run.out) / "schedule.json", doc.dump(2) + "\n");
  return ok ? kExitPass : kExitTestFailure;
}

int energy_audit_cmd(const ExperimentConfig& cfg, std::ostream& out) {
  const GridSpec g = cfg.grid_spec();
  EnergyAuditSetup setup;
  setup.initial = initial_state(cfg);
  const NoiseConfig noise = noise_config(cfg);
  const ConvolutionState state =
      advance_convolution(ConvolutionState::zero(g), 0.5, noise, NoiseStream(noise.seed));
  setup.bundle = wick_powers(state, noise);
  setup.rho = radial_cutoff(g, cfg.cutoff.R);
  setup.spec = MultiplierSpec{cfg.verify.audit_N, cfg.schedule.s};
  setup.dt = g.dx() / 8.0;
  setup.duration = std::min(cfg.run.T, 0.5);
  return finish_reports({energy_audit(setup)}, cfg, out);
}

}  // namespace

int run_subcommand(const std::string& name, ExperimentConfig cfg, const CliOptions& options, std::ostream& out,
                   std::ostream& err) {
  if (options.seed_override) {
    cfg.noise.seed = *options.seed_override;
    cfg.verify.first_seed = *options.seed_override;
  }
  if (options.out) cfg.run.out = *options.out;
  if (options.jobs) cfg.verify.jobs = *options.jobs;
  try {
    if (auto v = validate(cfg); !v.empty()) throw ConfigError(v);
    if (name == "simulate") return simulate(cfg, out);
    if (name == "verify-noise") return verify_noise(cfg, cfg.verify.jobs, out);
    if (name == "verify-commutators") return verify_commutators(cfg, out);
    if (name == "verify-propagation") return verify_propagation(cfg, out, err);
    if (name == "schedule") return schedule(cfg, out);
    if (name == "energy-audit") return energy_audit_cmd(cfg, out);
    err << "unknown subcommand '" << name << "'\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitConfigError;
  } catch (const InfeasibleSchedule& e) {
    err << "InfeasibleSchedule: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const BlowUp& e) {
    err << name << ": " << e.what() << "\n";
    return kExitRuntimeError;
  } catch (const NonConvergence& e) {
    err << name << ": " << e.what() << "\n";
    return kExitRuntimeError;
  } catch (const std::exception& e) {
    err << name << ": " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulator and verification suite for the renormalised cubic stochastic wave equation"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> jobs;
  app.add_option("--config", config_path, "configuration file (sectioned key = value)");
  app.add_option("--seed-override", seed, "replace the noise seed and the first verification seed");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--jobs", jobs, "worker threads for seed-parallel suites")->check(CLI::PositiveNumber);
  for (const auto& name : subcommand_names()) app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitConfigError;
  }

  ExperimentConfig cfg;
  try {
    cfg = config_path.empty() ? parse_config("") : load_config(config_path);
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitConfigError;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  return run_subcommand(name, cfg, CliOptions{seed, out_dir, jobs}, out, err);
}

}  // namespace snlw

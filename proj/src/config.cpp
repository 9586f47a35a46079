#include "snlw/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "snlw/errors.hpp"

namespace snlw {

ScheduleParams ExperimentConfig::schedule_params() const {
  if (!schedule.alpha_beta_given) {
    const double lo = 2.0 * (1.0 - schedule.s);
    const double hi = 1.0 - 3.0 * (1.0 - schedule.s);
    if (lo < 0.3 && 0.6 < hi) return ScheduleParams{schedule.s, 0.6, 0.3, schedule.margin};
    return ScheduleParams::centered(schedule.s, schedule.margin);
  }
  return ScheduleParams{schedule.s, schedule.alpha, schedule.beta, schedule.margin};
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

bool parse_value(const std::string& raw, double& out) {
  const std::string s = trim(raw);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_value(const std::string& raw, int& out) {
  const std::string s = trim(raw);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

bool parse_value(const std::string& raw, std::uint64_t& out) {
  const std::string s = trim(raw);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

bool parse_value(const std::string& raw, bool& out) {
  const std::string s = trim(raw);
  if (s == "true" || s == "1" || s == "yes") {
    out = true;
    return true;
  }
  if (s == "false" || s == "0" || s == "no") {
    out = false;
    return true;
  }
  return false;
}

bool parse_value(const std::string& raw, std::string& out) {
  out = trim(raw);
  return !out.empty();
}

using Setter = std::function<bool(const std::string&)>;
using KeyTable = std::map<std::string, std::map<std::string, Setter>>;

template <class T>
Setter bind(T& field) {
  return [&field](const std::string& s) { return parse_value(s, field); };
}

KeyTable key_table(ExperimentConfig& c) {
  KeyTable t;
  t["grid"] = {{"L", bind(c.grid.L)}, {"n", bind(c.grid.n)}};
  t["noise"] = {{"seed", bind(c.noise.seed)}, {"N", bind(c.noise.N)}, {"amplitude", bind(c.noise.amplitude)}};
  t["solver"] = {{"dt", bind(c.solver.dt)},
                 {"picard_iters", bind(c.solver.picard_iters)},
                 {"picard_tol", bind(c.solver.picard_tol)},
                 {"blowup_threshold", bind(c.solver.blowup_threshold)},
                 {"window_tau", bind(c.solver.window_tau)}};
  t["schedule"] = {{"s", bind(c.schedule.s)},
                   {"alpha", bind(c.schedule.alpha)},
                   {"beta", bind(c.schedule.beta)},
                   {"margin", bind(c.schedule.margin)}};
  t["cutoff"] = {{"R", bind(c.cutoff.R)}};
  t["initial"] = {{"amplitude", bind(c.initial.amplitude)}, {"width", bind(c.initial.width)}};
  t["run"] = {{"T", bind(c.run.T)}, {"out", bind(c.run.out)}};
  t["verify"] = {{"seeds", bind(c.verify.seeds)},
                 {"first_seed", bind(c.verify.first_seed)},
                 {"N", bind(c.verify.N)},
                 {"n", bind(c.verify.n)},
                 {"eps", bind(c.verify.eps)},
                 {"p", bind(c.verify.p)},
                 {"inject_sigma_fault", bind(c.verify.inject_sigma_fault)},
                 {"audit_N", bind(c.verify.audit_N)},
                 {"jobs", bind(c.verify.jobs)}};
  return t;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

std::vector<std::string> validate(const ExperimentConfig& c) {
  std::vector<std::string> v;
  auto require = [&v](bool ok, const std::string& msg) {
    if (!ok) v.push_back(msg);
  };
  require(c.grid.L > 0.0, "[grid] L must be positive");
  require(c.grid.n >= 4 && c.grid.n % 2 == 0, "[grid] n must be an even integer >= 4");
  const bool grid_ok = c.grid.L > 0.0 && c.grid.n >= 4 && c.grid.n % 2 == 0;
  const double dx = grid_ok ? c.grid.L / c.grid.n : 0.0;
  const double nyquist = grid_ok ? std::numbers::pi * c.grid.n / c.grid.L : 0.0;

  require(c.noise.N > 0.0, "[noise] N must be positive");
  if (grid_ok)
    require(c.noise.N <= nyquist * (1.0 + 1e-12),
            "[noise] N = " + num(c.noise.N) + " exceeds the grid Nyquist frequency pi*n/L = " + num(nyquist));
  require(c.noise.amplitude >= 0.0, "[noise] amplitude must be non-negative");

  require(c.solver.dt > 0.0, "[solver] dt must be positive");
  if (grid_ok)
    require(c.solver.dt <= dx * (1.0 + 1e-12),
            "[solver] dt = " + num(c.solver.dt) + " exceeds the grid spacing dx = " + num(dx));
  require(c.solver.picard_iters >= 1, "[solver] picard_iters must be >= 1");
  require(c.solver.picard_tol > 0.0, "[solver] picard_tol must be positive");
  require(c.solver.blowup_threshold > 0.0, "[solver] blowup_threshold must be positive");
  require(c.solver.window_tau > 0.0, "[solver] window_tau must be positive");

  const double s = c.schedule.s;
  if (!(s > 0.8)) {
    v.push_back("InfeasibleSchedule: [schedule] s = " + num(s) +
                " must exceed 4/5; for s <= 4/5 the window 2(1-s) < beta < alpha < 1-3(1-s) is empty");
  } else if (!(s < 1.0)) {
    v.push_back("[schedule] s must be < 1");
  } else if (c.schedule.alpha_beta_given) {
    const double lo = 2.0 * (1.0 - s);
    const double hi = 1.0 - 3.0 * (1.0 - s);
    require(lo < c.schedule.beta && c.schedule.beta < c.schedule.alpha && c.schedule.alpha < hi,
            "InfeasibleSchedule: need 2(1-s) < beta < alpha < 1-3(1-s) = (" + num(lo) + ", " + num(hi) +
                "), got beta = " + num(c.schedule.beta) + ", alpha = " + num(c.schedule.alpha));
  }
  require(c.schedule.margin > 0.0 && c.schedule.margin <= 1.0, "[schedule] margin must lie in (0, 1]");

  require(c.cutoff.R >= 0.0, "[cutoff] R must be non-negative");
  require(c.initial.amplitude >= 0.0, "[initial] amplitude must be non-negative");
  require(c.initial.width > 0.0, "[initial] width must be positive");
  require(c.run.T > 0.0, "[run] T must be positive");
  require(!c.run.out.empty(), "[run] out must name a directory");
  if (c.grid.L > 0.0 && c.run.T > 0.0 && c.cutoff.R >= 0.0) {
    const double need = 4.0 * (c.run.T + c.cutoff.R + 1.0);
    require(c.grid.L >= need, "cone-wrap: [grid] L = " + num(c.grid.L) + " is smaller than 4(T + R + 1) = " +
                                  num(need) + "; the light cone of the cutoff region would wrap around the box");
  }

  require(c.verify.seeds >= 2, "[verify] seeds must be >= 2");
  require(c.verify.n >= 8 && c.verify.n % 2 == 0, "[verify] n must be an even integer >= 8");
  require(c.verify.N > 1.0, "[verify] N must exceed 1");
  if (c.verify.n >= 8) require(2.0 * c.verify.N <= c.verify.n / 2, "[verify] 2N must not exceed n/2");
  require(c.verify.eps >= 0.0, "[verify] eps must be non-negative");
  require(c.verify.p >= 1.0, "[verify] p must be >= 1");
  require(c.verify.audit_N > 0.0, "[verify] audit_N must be positive");
  require(c.verify.jobs >= 1, "[verify] jobs must be >= 1");
  return v;
}

ExperimentConfig parse_config(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError({"malformed configuration text (line " + std::to_string(e.line()) + "): " + e.message()});
  }

  ExperimentConfig cfg;
  const KeyTable table = key_table(cfg);
  std::vector<std::string> errors;
  bool alpha = false;
  bool beta = false;
  for (const auto& [section, keys] : tree) {
    const auto sec = table.find(section);
    if (sec == table.end()) {
      if (keys.empty())
        errors.push_back("key '" + section + "' must appear inside a section");
      else
        errors.push_back("unknown section [" + section + "]");
      continue;
    }
    for (const auto& [key, node] : keys) {
      const auto it = sec->second.find(key);
      if (it == sec->second.end()) {
        errors.push_back("unknown key '" + key + "' in [" + section + "]");
        continue;
      }
      if (!it->second(node.data()))
        errors.push_back("bad value '" + node.data() + "' for [" + section + "] " + key);
      if (section == "schedule" && key == "alpha") alpha = true;
      if (section == "schedule" && key == "beta") beta = true;
    }
  }
  if (alpha != beta) errors.push_back("[schedule] alpha and beta must be given together");
  cfg.schedule.alpha_beta_given = alpha && beta;
  if (!cfg.schedule.alpha_beta_given && cfg.schedule.s > 0.8 && cfg.schedule.s < 1.0) {
    const ScheduleParams p = cfg.schedule_params();
    cfg.schedule.alpha = p.alpha;
    cfg.schedule.beta = p.beta;
  }

  for (auto& e : validate(cfg)) errors.push_back(std::move(e));
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read configuration file '" + path + "'"});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream os;
  os << "[grid]\nL = " << num(grid.L) << "\nn = " << grid.n << "\n\n";
  os << "[noise]\nseed = " << noise.seed << "\nN = " << num(noise.N) << "\namplitude = " << num(noise.amplitude)
     << "\n\n";
  os << "[solver]\ndt = " << num(solver.dt) << "\npicard_iters = " << solver.picard_iters
     << "\npicard_tol = " << num(solver.picard_tol) << "\nblowup_threshold = " << num(solver.blowup_threshold)
     << "\nwindow_tau = " << num(solver.window_tau) << "\n\n";
  os << "[schedule]\ns = " << num(schedule.s) << "\nalpha = " << num(schedule.alpha)
     << "\nbeta = " << num(schedule.beta) << "\nmargin = " << num(schedule.margin) << "\n\n";
  os << "[cutoff]\nR = " << num(cutoff.R) << "\n\n";
  os << "[initial]\namplitude = " << num(initial.amplitude) << "\nwidth = " << num(initial.width) << "\n\n";
  os << "[run]\nT = " << num(run.T) << "\nout = " << run.out << "\n\n";
  os << "[verify]\nseeds = " << verify.seeds << "\nfirst_seed = " << verify.first_seed << "\nN = " << num(verify.N)
     << "\nn = " << verify.n << "\neps = " << num(verify.eps) << "\np = " << num(verify.p)
     << "\ninject_sigma_fault = " << (verify.inject_sigma_fault ? "true" : "false")
     << "\naudit_N = " << num(verify.audit_N) << "\njobs = " << verify.jobs << "\n";
  return os.str();
}

}  // namespace snlw

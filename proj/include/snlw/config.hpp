#pragma once

#include <cstdint>
#include <string>

#include "snlw/grid.hpp"
#include "snlw/schedule.hpp"

namespace snlw {

inline constexpr int kArtifactFormatVersion = 1;

/// Everything an experiment needs, read from sectioned key = value text:
///
///   [grid]     L, n
///   [noise]    seed, N, amplitude
///   [solver]   dt, picard_iters, picard_tol, blowup_threshold, window_tau
///   [schedule] s, alpha, beta, margin
///   [cutoff]   R
///   [initial]  amplitude, width          u0 = amplitude exp(-|x|^2 / width^2), u1 = 0
///   [run]      T, out
///   [verify]   seeds, first_seed, N, n, eps, p, inject_sigma_fault, audit_N, jobs
///
/// Missing keys take the defaults below. alpha = 0.6, beta = 0.3 when that pair
/// lies inside the admissible window 2(1-s) < beta < alpha < 1-3(1-s); otherwise
/// beta and alpha sit at one and two thirds of the window.
struct ExperimentConfig {
  struct Grid {
    double L = 32.0;
    int n = 128;
  } grid;
  struct Noise {
    std::uint64_t seed = 1;
    double N = 4.0;
    double amplitude = 0.1;
  } noise;
  struct Solver {
    double dt = 0.0625;
    int picard_iters = 20;
    double picard_tol = 1e-8;
    double blowup_threshold = 1e6;
    double window_tau = 0.25;
  } solver;
  struct Schedule {
    double s = 0.9;
    double alpha = 0.0;
    double beta = 0.0;
    double margin = 0.5;
    bool alpha_beta_given = false;
  } schedule;
  struct Cutoff {
    double R = 2.0;
  } cutoff;
  struct Initial {
    double amplitude = 0.2;
    double width = 1.0;
  } initial;
  struct Run {
    double T = 1.0;
    std::string out = "out";
  } run;
  struct Verify {
    int seeds = 200;
    std::uint64_t first_seed = 1;
    double N = 16.0;
    int n = 64;
    double eps = 0.1;
    double p = 2.0;
    bool inject_sigma_fault = false;
    double audit_N = 2.0;
    int jobs = 1;
  } verify;

  GridSpec grid_spec() const { return GridSpec(grid.L, grid.n); }
  ScheduleParams schedule_params() const;
  /// Every key with its resolved value, in a fixed order; parses back to the same config.
  std::string to_text() const;
};

/// Parses and validates. Throws ConfigError listing every violation,
/// including unknown sections or keys and malformed values.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// The constraint checks alone, one message per violation.
std::vector<std::string> validate(const ExperimentConfig& cfg);

}  // namespace snlw

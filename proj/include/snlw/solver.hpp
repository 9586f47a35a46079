#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "snlw/imethod.hpp"
#include "snlw/noise.hpp"
#include "snlw/schedule.hpp"
#include "snlw/wave_state.hpp"

namespace snlw {

/// C-infinity step: 0 for u <= 0, 1 for u >= 1, e^{-1/u} / (e^{-1/u} + e^{-1/(1-u)}) between.
double smooth_transition(double u);

/// Radial bump: 1 on |x| <= R, 0 for |x| >= R + width, smooth_transition in between.
RealField radial_cutoff(const GridSpec& g, double R, double width = 1.0);

/// Settings for the localized equation
///   v_tt - Lap v + v^3 + 3 v^2 rho psi + 3 v rho :psi^2: + rho :psi^3: = 0.
struct SolverConfig {
  double dt = 0.05;
  int picard_iters = 20;
  double picard_tol = 1e-10;
  double s = 0.9;
  RealField rho;
  double blowup_threshold = 1e6;

  explicit SolverConfig(RealField cutoff) : rho(std::move(cutoff)) {}

  /// Throws InvalidArgument unless dt <= dx, tolerances are positive,
  /// 0 <= rho <= 1 and rho lives on `grid`.
  void validate(const GridSpec& grid) const;
};

/// ||v||_{H^s}^2 + ||v_t||_{H^{s-1}}^2, square-rooted.
double state_norm(const WaveModes& w, double s);

/// Drops every mode outside the dealiased band. The energy derivative splits
/// exactly into its four terms only for states inside the band.
WaveModes project_to_band(const WaveModes& w);

/// Exact linear wave flow over time h.
WaveModes free_step(const WaveModes& w, double h);
WaveState free_step(const WaveState& w, double h);

/// Result of one mild-formulation step.
struct StepOutcome {
  WaveModes state;
  int iterations = 0;
  double last_increment = 0.0;
};

/// One step of length h: the fixed point of the discrete Duhamel map with
/// trapezoidal quadrature and exact kernel weights,
///   v(h)   = cos(h|D|) v + sin(h|D|)/|D| v_t - h/2 sin(h|D|)/|D| F(0)
///   v_t(h) = -|D| sin(h|D|) v + cos(h|D|) v_t - h/2 (cos(h|D|) F(0) + F(h)),
/// where F is cubic_forcing with the 2/3 dealiasing mask. Iterates from the
/// free step until the H^s x H^{s-1} increment is <= picard_tol.
/// Throws NonConvergence if an iterate fails to shrink the increment by 0.9
/// or picard_iters is exhausted.
StepOutcome picard_step(const WaveModes& w, const LocalizedNoise& noise_start, const LocalizedNoise& noise_end,
                        double h, const SolverConfig& cfg);
WaveState picard_step(const WaveState& w, const WickBundle& noise_start, const WickBundle& noise_end, double h,
                      const SolverConfig& cfg);

struct StepRecord {
  double t = 0.0;
  double hs_norm = 0.0;
  EnergySnapshot energy;
  std::int64_t N_exponent = -1;  // -1 when the energy is unsmoothed
};

struct LocalRun {
  std::vector<StepRecord> records;  // initial state followed by every step
  WaveModes final;
};

using StepObserver = std::function<void(const WaveModes&)>;

/// ceil(tau/dt) equal steps from w0, taken as given. `smoothing` selects the
/// recorded energy: E(I_N v, I_N v_t) when set, E(v, v_t) otherwise. Throws
/// BlowUp when state_norm exceeds the threshold (or stops being finite),
/// NonConvergence from picard_step.
LocalRun run_local(const WaveModes& w0, NoiseSource& noise, double tau, const SolverConfig& cfg,
                   const std::optional<MultiplierSpec>& smoothing = std::nullopt,
                   const StepObserver& observer = {});

struct WindowLog {
  int index = 0;
  std::int64_t N_exponent = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  double sup_energy = 0.0;       // sup over the window of E(I_{N_k} v)
  double hs_norm_end = 0.0;
  bool within_alpha = true;      // sup_energy <= N_k^alpha
  double boundary_energy = 0.0;  // E(I_{N_{k+1}} v) at t_end; 0 for the last window
  bool violation = false;        // boundary_energy > 1/2 N_{k+1}^beta
};

struct GlobalRun {
  std::vector<StepRecord> records;
  std::vector<WindowLog> windows;
  WaveModes final;

  int violations() const;
  bool all_within_alpha() const;
};

/// Windows of length `window_tau` up to time T with the N_k ladder started
/// from the H^s norms of the initial data. ScheduleViolation events are
/// logged, never thrown.
GlobalRun run_global(const WaveModes& w0, NoiseSource& noise, double T, double window_tau, const SolverConfig& cfg,
                     const ScheduleParams& p);

/// Smallest C with E <= N^beta exp(C (t - t_k) log N) over every record of the
/// run, taking log N >= 1. Used to calibrate the growth envelope once.
double fit_gronwall_constant(const GlobalRun& run, const ScheduleParams& p);
/// True if every record stays below the envelope with constant C.
bool within_gronwall_envelope(const GlobalRun& run, const ScheduleParams& p, double C);

}  // namespace snlw

#include "snlw/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "snlw/errors.hpp"

namespace snlw {

namespace {

double bump_tail(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

}  // namespace

double smooth_transition(double u) {
  const double a = bump_tail(u);
  const double b = bump_tail(1.0 - u);
  return a / (a + b);
}

RealField radial_cutoff(const GridSpec& g, double R, double width) {
  if (!(R >= 0.0)) throw InvalidArgument("cutoff radius must be non-negative");
  if (!(width > 0.0)) throw InvalidArgument("cutoff transition width must be positive");
  return RealField::sample(g, [R, width](double x, double y) {
    return 1.0 - smooth_transition((std::hypot(x, y) - R) / width);
  });
}

void SolverConfig::validate(const GridSpec& grid) const {
  if (!(dt > 0.0)) throw InvalidArgument("solver dt must be positive");
  if (dt > grid.dx() * (1.0 + 1e-12)) throw InvalidArgument("solver dt must not exceed the grid spacing dx");
  if (picard_iters < 1) throw InvalidArgument("picard_iters must be >= 1");
  if (!(picard_tol > 0.0)) throw InvalidArgument("picard_tol must be positive");
  if (!(blowup_threshold > 0.0)) throw InvalidArgument("blowup_threshold must be positive");
  if (!(rho.grid == grid)) throw InvalidArgument("cutoff rho lives on a different grid");
  for (double r : rho.values)
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("cutoff rho must take values in [0, 1]");
}

double state_norm(const WaveModes& w, double s) {
  const double a = norm_hs(w.v, s);
  const double b = norm_hs(w.v_t, s - 1.0);
  return std::sqrt(a * a + b * b);
}

namespace {

// Per-mode kernel values for a step h.
struct Kernel {
  std::vector<double> cos_h;   // cos(h w)
  std::vector<double> sinc_h;  // sin(h w) / w, h at w = 0
  std::vector<double> wsin_h;  // w sin(h w)
};

Kernel kernel_for(const GridSpec& g, double h) {
  Kernel k;
  k.cos_h.resize(g.size());
  k.sinc_h.resize(g.size());
  k.wsin_h.resize(g.size());
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      const double w = g.xi_abs(i, j);
      const std::size_t q = g.flat(i, j);
      k.cos_h[q] = std::cos(h * w);
      k.sinc_h[q] = w == 0.0 ? h : std::sin(h * w) / w;
      k.wsin_h[q] = w * std::sin(h * w);
    }
  return k;
}

WaveModes rotate(const WaveModes& w, const Kernel& k, double h) {
  WaveModes out = WaveModes::zero(w.grid(), w.t + h);
  for (std::size_t q = 0; q < w.v.coeffs.size(); ++q) {
    const Complex a = w.v.coeffs[q];
    const Complex b = w.v_t.coeffs[q];
    out.v.coeffs[q] = k.cos_h[q] * a + k.sinc_h[q] * b;
    out.v_t.coeffs[q] = -k.wsin_h[q] * a + k.cos_h[q] * b;
  }
  return out;
}

SpectralField forcing(const SpectralField& v, const LocalizedNoise& noise) {
  return dealias_cubic(cubic_forcing(v, noise));
}

}  // namespace

WaveModes project_to_band(const WaveModes& w) { return WaveModes{dealias_cubic(w.v), dealias_cubic(w.v_t), w.t}; }

WaveModes free_step(const WaveModes& w, double h) {
  if (h == 0.0) return w;
  return rotate(w, kernel_for(w.grid(), h), h);
}

WaveState free_step(const WaveState& w, double h) { return free_step(WaveModes::from(w), h).state(); }

StepOutcome picard_step(const WaveModes& w, const LocalizedNoise& noise_start, const LocalizedNoise& noise_end,
                        double h, const SolverConfig& cfg) {
  if (!(h > 0.0)) throw InvalidArgument("picard_step needs h > 0");
  if (h > cfg.dt * (1.0 + 1e-12)) throw InvalidArgument("picard_step needs h <= dt");
  const Kernel k = kernel_for(w.grid(), h);
  const WaveModes free = rotate(w, k, h);
  const SpectralField F0 = forcing(w.v, noise_start);

  // v(t+h) depends on F(t) only; the endpoint value F(t+h) enters v_t.
  WaveModes guess = free;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= cfg.picard_iters; ++it) {
    const SpectralField F1 = forcing(guess.v, noise_end);
    WaveModes next = free;
    for (std::size_t q = 0; q < F0.coeffs.size(); ++q) {
      next.v.coeffs[q] -= 0.5 * h * k.sinc_h[q] * F0.coeffs[q];
      next.v_t.coeffs[q] -= 0.5 * h * (k.cos_h[q] * F0.coeffs[q] + F1.coeffs[q]);
    }
    const double increment = state_norm(WaveModes{next.v - guess.v, next.v_t - guess.v_t, next.t}, cfg.s);
    guess = std::move(next);
    if (!std::isfinite(increment)) throw NonConvergence(w.t + h, it, increment);
    if (increment <= cfg.picard_tol) return StepOutcome{std::move(guess), it, increment};
    if (it > 1 && increment > 0.9 * previous) throw NonConvergence(w.t + h, it, increment);
    previous = increment;
  }
  throw NonConvergence(w.t + h, cfg.picard_iters, previous);
}

WaveState picard_step(const WaveState& w, const WickBundle& noise_start, const WickBundle& noise_end, double h,
                      const SolverConfig& cfg) {
  return picard_step(WaveModes::from(w), LocalizedNoise::from(noise_start, cfg.rho),
                     LocalizedNoise::from(noise_end, cfg.rho), h, cfg)
      .state.state();
}

namespace {

StepRecord record_of(const WaveModes& w, double s, const std::optional<MultiplierSpec>& smoothing,
                     std::int64_t N_exponent) {
  StepRecord r;
  r.t = w.t;
  r.hs_norm = norm_hs(w.v, s);
  r.energy = smoothing ? modified_energy(w, *smoothing) : energy(w);
  r.N_exponent = smoothing ? N_exponent : -1;
  return r;
}

LocalizedNoise localize(const NoiseSource& noise, const SolverConfig& cfg) {
  if (noise.is_off()) return LocalizedNoise::zero(cfg.rho.grid);
  return LocalizedNoise::from(noise.current(), cfg.rho);
}

LocalRun run_local_impl(const WaveModes& w0, NoiseSource& noise, double tau, const SolverConfig& cfg,
                        const std::optional<MultiplierSpec>& smoothing, std::int64_t N_exponent,
                        const StepObserver& observer) {
  cfg.validate(w0.grid());
  if (!(tau > 0.0)) throw InvalidArgument("run_local needs tau > 0");
  const int steps = static_cast<int>(std::ceil(tau / cfg.dt - 1e-9));
  const double h = tau / steps;

  LocalRun run{{}, w0};
  run.records.push_back(record_of(run.final, cfg.s, smoothing, N_exponent));
  if (observer) observer(run.final);
  LocalizedNoise start = localize(noise, cfg);
  for (int n = 0; n < steps; ++n) {
    noise.advance(h);
    LocalizedNoise end = localize(noise, cfg);
    run.final = picard_step(run.final, start, end, h, cfg).state;
    // accumulate time from the start to keep window boundaries exact
    run.final.t = w0.t + (n + 1 == steps ? tau : (n + 1) * h);
    const double norm = state_norm(run.final, cfg.s);
    if (!(norm <= cfg.blowup_threshold)) throw BlowUp(run.final.t, norm, cfg.blowup_threshold);
    run.records.push_back(record_of(run.final, cfg.s, smoothing, N_exponent));
    if (observer) observer(run.final);
    start = std::move(end);
  }
  return run;
}

}  // namespace

LocalRun run_local(const WaveModes& w0, NoiseSource& noise, double tau, const SolverConfig& cfg,
                   const std::optional<MultiplierSpec>& smoothing, const StepObserver& observer) {
  return run_local_impl(w0, noise, tau, cfg, smoothing, smoothing ? 0 : -1, observer);
}

int GlobalRun::violations() const {
  return static_cast<int>(std::count_if(windows.begin(), windows.end(), [](const WindowLog& w) { return w.violation; }));
}

bool GlobalRun::all_within_alpha() const {
  return std::all_of(windows.begin(), windows.end(), [](const WindowLog& w) { return w.within_alpha; });
}

GlobalRun run_global(const WaveModes& w0, NoiseSource& noise, double T, double window_tau, const SolverConfig& cfg,
                     const ScheduleParams& p) {
  p.validate();
  if (!(T > 0.0) || !(window_tau > 0.0)) throw InvalidArgument("run_global needs T > 0 and window_tau > 0");
  const int windows = static_cast<int>(std::ceil(T / window_tau - 1e-9));

  const WaveModes start = project_to_band(w0);
  PowerOfTwo N = initial_N(norm_hs(start.v, p.s), norm_hs(start.v_t, p.s - 1.0), p);

  GlobalRun run{{}, {}, start};
  for (int k = 0; k < windows; ++k) {
    const double t0 = run.final.t;
    const double len = std::min(window_tau, w0.t + T - t0);
    const MultiplierSpec spec{N.value(), p.s};
    LocalRun local = run_local_impl(run.final, noise, len, cfg, spec, N.exponent, {});

    WindowLog log;
    log.index = k;
    log.N_exponent = N.exponent;
    log.t_start = t0;
    log.t_end = local.final.t;
    for (const auto& r : local.records) log.sup_energy = std::max(log.sup_energy, r.energy.total);
    log.hs_norm_end = local.records.back().hs_norm;
    log.within_alpha = std::log2(log.sup_energy) <= p.alpha * static_cast<double>(N.exponent);

    auto first = local.records.begin();
    if (!run.records.empty()) ++first;  // the window start repeats the previous end
    run.records.insert(run.records.end(), first, local.records.end());
    run.final = std::move(local.final);

    if (k + 1 < windows) {
      const PowerOfTwo N_next = next_N(N, p);
      log.boundary_energy = modified_energy(run.final, MultiplierSpec{N_next.value(), p.s}).total;
      log.violation = std::log2(log.boundary_energy) > std::log2(0.5) + p.beta * static_cast<double>(N_next.exponent);
      N = N_next;
    }
    run.windows.push_back(log);
  }
  return run;
}

namespace {

double log_N(std::int64_t exponent) { return std::max(1.0, static_cast<double>(exponent) * std::log(2.0)); }

// Window start time for a record in window order.
double window_start(const GlobalRun& run, std::int64_t exponent, double t) {
  for (const auto& w : run.windows)
    if (w.N_exponent == exponent && t >= w.t_start - 1e-12 && t <= w.t_end + 1e-12) return w.t_start;
  return t;
}

}  // namespace

double fit_gronwall_constant(const GlobalRun& run, const ScheduleParams& p) {
  double C = 0.0;
  for (const auto& r : run.records) {
    const double lnN = static_cast<double>(r.N_exponent) * std::log(2.0);
    const double excess = std::log(r.energy.total) - p.beta * lnN;
    if (excess <= 0.0) continue;
    const double elapsed = r.t - window_start(run, r.N_exponent, r.t);
    if (elapsed <= 0.0) return std::numeric_limits<double>::infinity();
    C = std::max(C, excess / (elapsed * log_N(r.N_exponent)));
  }
  return C;
}

bool within_gronwall_envelope(const GlobalRun& run, const ScheduleParams& p, double C) {
  for (const auto& r : run.records) {
    const double lnN = static_cast<double>(r.N_exponent) * std::log(2.0);
    const double elapsed = r.t - window_start(run, r.N_exponent, r.t);
    if (std::log(r.energy.total) > p.beta * lnN + C * elapsed * log_N(r.N_exponent) + 1e-12) return false;
  }
  return true;
}

}  // namespace snlw

#include "snlw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "snlw/errors.hpp"

namespace snlw {

TestReport TestReport::make(std::string name, double statistic, double band_low, double band_high,
                            std::int64_t samples) {
  TestReport r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.band_low = band_low;
  r.band_high = band_high;
  r.samples = samples;
  r.pass = statistic >= band_low && statistic <= band_high;
  return r;
}

TestReport& TestReport::note(const std::string& key, const std::string& value) {
  metadata.emplace_back(key, value);
  return *this;
}

TestReport& TestReport::note(const std::string& key, double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return note(key, os.str());
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, int count) {
  std::vector<std::uint64_t> out;
  for (int i = 0; i < count; ++i) out.push_back(first + static_cast<std::uint64_t>(i));
  return out;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& f) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += jobs) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

std::string join(const std::vector<double>& xs) {
  std::ostringstream os;
  os.precision(10);
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  return os.str();
}

// Smallest n = 2^a or 3*2^a with n >= required (n >= 4).
int fft_size_at_least(int required) {
  int best = std::numeric_limits<int>::max();
  for (int base : {4, 6}) {
    int n = base;
    while (n < required) n *= 2;
    best = std::min(best, n);
  }
  return best;
}

// Grid on the same box whose Nyquist index exceeds `max_index`.
GridSpec alias_free_grid(const GridSpec& g, double max_index) {
  return GridSpec(g.L(), std::max(g.n(), fft_size_at_least(static_cast<int>(std::ceil(2.0 * max_index)) + 2)));
}

double wavenumber_index(const GridSpec& g, double xi) { return xi * g.L() / (2.0 * std::numbers::pi); }

struct TimeNodes {
  std::vector<double> t;
  std::vector<double> weight;
};

// Trapezoid on [0, T]; the t = 0 node is dropped because psi(0) = 0 makes
// every statistic vanish there.
TimeNodes time_nodes(double T, int K) {
  if (K < 1) throw InvalidArgument("need at least one time node");
  TimeNodes nodes;
  for (int j = 1; j <= K; ++j) {
    nodes.t.push_back(T * j / K);
    nodes.weight.push_back(T / K * (j == K ? 0.5 : 1.0));
  }
  return nodes;
}

NoiseConfig noise_config(const NoiseTestSetup& setup, double N, std::uint64_t seed) {
  NoiseConfig cfg;
  cfg.seed = seed;
  cfg.cutoff_N = N;
  cfg.grid = setup.grid;
  cfg.amplitude = setup.amplitude;
  return cfg;
}

// Convolution states at each node, by exact steps between consecutive nodes.
std::vector<ConvolutionState> evolve(const NoiseConfig& cfg, const TimeNodes& nodes) {
  std::vector<ConvolutionState> out;
  ConvolutionState state = ConvolutionState::zero(cfg.grid);
  const NoiseStream rng(cfg.seed);
  double t = 0.0;
  for (double tn : nodes.t) {
    state = advance_convolution(state, tn - t, cfg, rng);
    t = tn;
    out.push_back(state);
  }
  return out;
}

// :psi^l: of the band-limited field psi_hat, sampled on `fine`.
RealField wick_on(const SpectralField& psi_hat, double sigma, int l, const GridSpec& fine) {
  RealField f = to_physical(resample(psi_hat, fine));
  for (auto& x : f.values) x = hermite(l, x, sigma);
  return f;
}

double integral(const RealField& f) {
  double acc = 0.0;
  for (double x : f.values) acc += x;
  return acc * f.grid.dx() * f.grid.dx();
}

void require_resolved(const NoiseTestSetup& setup, double N) {
  if (N > setup.grid.nyquist_frequency() * (1.0 + 1e-12))
    throw InvalidArgument("cutoff exceeds the grid Nyquist frequency of the test setup");
}

}  // namespace

// ------------------------------------------------------------------ moments

MomentTestResult moment_bound_test(int l, double eps, double p, double N, const std::vector<std::uint64_t>& seeds,
                                   const NoiseTestSetup& setup) {
  if (l < 1 || l > 3) throw InvalidArgument("moment test needs l in 1..3");
  if (!(p >= 1.0)) throw InvalidArgument("moment test needs p >= 1");
  if (seeds.size() < 2) throw InvalidArgument("moment test needs at least two seeds");
  require_resolved(setup, 2.0 * N);
  const TimeNodes nodes = time_nodes(setup.T, setup.time_nodes);
  const GridSpec fine = alias_free_grid(setup.grid, (l + 1) * wavenumber_index(setup.grid, 2.0 * N));
  const RealField rho = radial_cutoff(fine, setup.R);

  std::vector<double> sigma_N;
  std::vector<double> sigma_2N;
  for (double t : nodes.t) {
    sigma_N.push_back(setup.sigma_scale * counterterm_sigma(noise_config(setup, N, 0), t));
    sigma_2N.push_back(setup.sigma_scale * counterterm_sigma(noise_config(setup, 2.0 * N, 0), t));
  }

  const int S = static_cast<int>(seeds.size());
  std::vector<double> moment_N(S), moment_2N(S), centre(S);
  parallel_for(S, setup.jobs, [&](int i) {
    const auto states = evolve(noise_config(setup, 2.0 * N, seeds[i]), nodes);
    double mN = 0.0, m2N = 0.0, c = 0.0;
    for (std::size_t j = 0; j < states.size(); ++j) {
      const auto& psi = states[j].psi_hat;
      const RealField big = hadamard(rho, wick_on(psi, sigma_2N[j], l, fine));
      const RealField small = hadamard(rho, wick_on(truncate_ball(psi, N), sigma_N[j], l, fine));
      m2N += nodes.weight[j] * std::pow(norm_w_sigma_p(big, -eps, p), p);
      mN += nodes.weight[j] * std::pow(norm_w_sigma_p(small, -eps, p), p);
      c += nodes.weight[j] * integral(big);
    }
    moment_N[i] = mN;
    moment_2N[i] = m2N;
    centre[i] = c;
  });

  const MeanEstimate eN = mean_estimate(moment_N);
  const MeanEstimate e2N = mean_estimate(moment_2N);
  const MeanEstimate ec = mean_estimate(centre);
  MomentTestResult r;
  const std::string tag = "moment_l" + std::to_string(l);
  r.uniformity = TestReport::make(tag + "_uniformity", e2N.mean / eN.mean, 0.5, 2.0, S);
  r.uniformity.note("N", N).note("M", 2.0 * N).note("p", p).note("eps", eps).note("moment_N", eN.mean)
      .note("moment_M", e2N.mean).note("sigma_scale", setup.sigma_scale)
      .note("tail", "moments stand in for the probability tail at this sample size");
  const double z = ec.stderr_mean > 0.0 ? std::abs(ec.mean) / ec.stderr_mean : (ec.mean == 0.0 ? 0.0 : INFINITY);
  r.centering = TestReport::make(tag + "_centering", z, 0.0, setup.z_band, S);
  r.centering.note("N", 2.0 * N).note("mean", ec.mean).note("stderr", ec.stderr_mean)
      .note("sigma_scale", setup.sigma_scale);
  return r;
}

// ------------------------------------------------------------------- Cauchy

CauchyTestResult cauchy_rate_test(int l, double eps, const std::vector<double>& N_list,
                                  const std::vector<std::uint64_t>& seeds, const NoiseTestSetup& setup,
                                  Coupling coupling) {
  if (l < 1 || l > 3) throw InvalidArgument("Cauchy test needs l in 1..3");
  if (N_list.size() < 3) throw InvalidArgument("Cauchy test needs at least three cutoffs");
  const double M_max = 2.0 * *std::max_element(N_list.begin(), N_list.end());
  require_resolved(setup, M_max);
  const TimeNodes nodes = time_nodes(setup.T, setup.time_nodes);
  const double rho_band = wavenumber_index(setup.grid, 16.0);

  std::vector<GridSpec> fine;
  std::vector<RealField> rho;
  std::vector<std::vector<double>> sig_N(N_list.size()), sig_M(N_list.size());
  for (std::size_t a = 0; a < N_list.size(); ++a) {
    fine.push_back(alias_free_grid(setup.grid, l * wavenumber_index(setup.grid, 2.0 * N_list[a]) + rho_band));
    rho.push_back(radial_cutoff(fine.back(), setup.R));
    for (double t : nodes.t) {
      sig_N[a].push_back(setup.sigma_scale * counterterm_sigma(noise_config(setup, N_list[a], 0), t));
      sig_M[a].push_back(setup.sigma_scale * counterterm_sigma(noise_config(setup, 2.0 * N_list[a], 0), t));
    }
  }

  const int S = static_cast<int>(seeds.size());
  std::vector<std::vector<double>> sq(N_list.size(), std::vector<double>(S));
  parallel_for(S, setup.jobs, [&](int i) {
    const auto master = evolve(noise_config(setup, M_max, seeds[i]), nodes);
    std::vector<ConvolutionState> other;
    if (coupling == Coupling::Decoupled)
      other = evolve(noise_config(setup, M_max, seeds[i] ^ 0x9E3779B97F4A7C15ULL), nodes);
    for (std::size_t a = 0; a < N_list.size(); ++a) {
      double acc = 0.0;
      for (std::size_t j = 0; j < nodes.t.size(); ++j) {
        const SpectralField psi_M = truncate_ball(master[j].psi_hat, 2.0 * N_list[a]);
        const SpectralField psi_N =
            truncate_ball((coupling == Coupling::Coupled ? master : other)[j].psi_hat, N_list[a]);
        RealField diff = wick_on(psi_M, sig_M[a][j], l, fine[a]);
        diff -= wick_on(psi_N, sig_N[a][j], l, fine[a]);
        const double h = norm_hs(to_spectral(hadamard(rho[a], diff)), -eps);
        acc += nodes.weight[j] * h * h;
      }
      sq[a][i] = acc;
    }
  });

  CauchyTestResult r;
  std::vector<std::pair<double, double>> xy;
  for (std::size_t a = 0; a < N_list.size(); ++a) {
    r.statistic.push_back(std::sqrt(mean_estimate(sq[a]).mean));
    xy.emplace_back(N_list[a], r.statistic.back());
  }
  r.fit = loglog_fit(xy);
  const std::string name = "cauchy_l" + std::to_string(l) + (coupling == Coupling::Coupled ? "" : "_decoupled") +
                           (setup.sigma_scale == 1.0 ? "" : "_sigma" + std::to_string(setup.sigma_scale));
  // The stderr gate is folded into the statistic: an unstable fit cannot pass.
  const double stat = r.fit.stderr_slope <= 0.1 ? r.fit.slope : std::numeric_limits<double>::infinity();
  r.report = TestReport::make(name, stat, -std::numeric_limits<double>::infinity(), -0.05, S);
  r.report.note("slope", r.fit.slope).note("stderr_slope", r.fit.stderr_slope).note("stderr_max", 0.1)
      .note("N_list", join(N_list)).note("statistic", join(r.statistic)).note("eps", eps)
      .note("coupling", coupling == Coupling::Coupled ? "coupled" : "decoupled")
      .note("sigma_scale", setup.sigma_scale);
  return r;
}

// ------------------------------------------------------------ continuity

ContinuityTestResult time_continuity_test(int l, double eps, double N, double t0, const std::vector<double>& h_list,
                                          const std::vector<std::uint64_t>& seeds, const NoiseTestSetup& setup) {
  if (l < 1 || l > 3) throw InvalidArgument("continuity test needs l in 1..3");
  if (h_list.size() < 3) throw InvalidArgument("continuity test needs at least three increments");
  if (!(t0 >= 0.0)) throw InvalidArgument("continuity test needs t0 >= 0");
  require_resolved(setup, N);
  const GridSpec fine = alias_free_grid(setup.grid, (l + 1) * wavenumber_index(setup.grid, N));
  const RealField rho = radial_cutoff(fine, setup.R);
  const NoiseConfig base = noise_config(setup, N, 0);
  const double sigma0 = setup.sigma_scale * counterterm_sigma(base, t0);

  const int S = static_cast<int>(seeds.size());
  std::vector<std::vector<double>> sq(h_list.size(), std::vector<double>(S));
  parallel_for(S, setup.jobs, [&](int i) {
    NoiseConfig cfg = base;
    cfg.seed = seeds[i];
    const NoiseStream rng(cfg.seed);
    ConvolutionState start = ConvolutionState::zero(cfg.grid);
    if (t0 > 0.0) start = advance_convolution(start, t0, cfg, rng);
    const RealField w0 = wick_on(start.psi_hat, sigma0, l, fine);
    for (std::size_t a = 0; a < h_list.size(); ++a) {
      const ConvolutionState later = advance_convolution(start, h_list[a], cfg, rng);
      const double sig = setup.sigma_scale * counterterm_sigma(cfg, t0 + h_list[a]);
      RealField diff = wick_on(later.psi_hat, sig, l, fine);
      diff -= w0;
      const double h = norm_hs(to_spectral(hadamard(rho, diff)), -eps);
      sq[a][i] = h * h;
    }
  });

  ContinuityTestResult r;
  std::vector<std::pair<double, double>> xy;
  for (std::size_t a = 0; a < h_list.size(); ++a) {
    r.statistic.push_back(mean_estimate(sq[a]).mean);
    xy.emplace_back(h_list[a], r.statistic.back());
  }
  r.fit = loglog_fit(xy);
  return r;
}

// -------------------------------------------------------------- Lp growth

namespace {

std::vector<double> lp_table(const GridSpec& g, double N, double s, bool identity) {
  if (identity) return std::vector<double>(g.size(), 1.0);
  return multiplier_table(g, MultiplierSpec{N, s});
}

}  // namespace

double expected_l2_growth(double N, double s, const NoiseTestSetup& setup, bool identity_multiplier) {
  const GridSpec& g = setup.grid;
  const TimeNodes nodes = time_nodes(setup.T, setup.time_nodes);
  const NoiseConfig cfg = noise_config(setup, g.nyquist_frequency(), 0);
  const double n2 = static_cast<double>(g.n()) * g.n();

  // |rho_hat|^2 as a lattice array.
  const SpectralField rho_hat = to_spectral(radial_cutoff(g, setup.R));
  RealField rho_power(g);
  for (std::size_t q = 0; q < g.size(); ++q) rho_power.values[q] = std::norm(rho_hat.coeffs[q]);
  const SpectralField rho_power_hat = to_spectral(rho_power);

  const auto m = lp_table(g, N, s, identity_multiplier);
  double total = 0.0;
  for (std::size_t j = 0; j < nodes.t.size(); ++j) {
    RealField var(g);  // E|psi_hat(q)|^2
    for (int a = 0; a < g.n(); ++a)
      for (int b = 0; b < g.n(); ++b)
        if (cfg.retains(a, b))
          var(a, b) = cfg.amplitude * cfg.amplitude * gamma(nodes.t[j], g.xi_abs(a, b)) / (g.L() * g.L());
    // circular convolution of the two lattice arrays
    SpectralField prod = to_spectral(var);
    for (std::size_t q = 0; q < g.size(); ++q) prod.coeffs[q] *= n2 * rho_power_hat.coeffs[q];
    const RealField coeff_var = to_physical(symmetrize(prod));
    double acc = 0.0;
    for (std::size_t q = 0; q < g.size(); ++q) acc += m[q] * m[q] * coeff_var.values[q];
    total += nodes.weight[j] * g.L() * g.L() * acc;
  }
  return total;
}

LpGrowthResult lp_growth_test(double p, const std::vector<double>& N_list, const std::vector<std::uint64_t>& seeds,
                              double s, const NoiseTestSetup& setup, bool identity_multiplier) {
  if (!(p >= 2.0)) throw InvalidArgument("Lp growth test needs p >= 2");
  if (N_list.size() < 2) throw InvalidArgument("Lp growth test needs at least two cutoffs");
  for (double N : N_list)
    if (!(N > 1.0)) throw InvalidArgument("Lp growth test needs N > 1 so that log N > 0");
  const GridSpec& g = setup.grid;
  const TimeNodes nodes = time_nodes(setup.T, setup.time_nodes);
  const RealField rho = radial_cutoff(g, setup.R);
  std::vector<std::vector<double>> tables;
  for (double N : N_list) tables.push_back(lp_table(g, N, s, identity_multiplier));

  const int S = static_cast<int>(seeds.size());
  std::vector<std::vector<double>> moments(N_list.size(), std::vector<double>(S));
  parallel_for(S, setup.jobs, [&](int i) {
    const auto states = evolve(noise_config(setup, g.nyquist_frequency(), seeds[i]), nodes);
    for (std::size_t j = 0; j < states.size(); ++j) {
      const SpectralField F = to_spectral(hadamard(rho, to_physical(states[j].psi_hat)));
      for (std::size_t a = 0; a < N_list.size(); ++a) {
        const SpectralField G = apply_multiplier_table(F, tables[a]);
        double val;
        if (p == 2.0) {
          const double nrm = norm_hs(G, 0.0);
          val = nrm * nrm;
        } else {
          val = std::pow(lp_norm(to_physical(G), p), p);
        }
        moments[a][i] += nodes.weight[j] * val;
      }
    }
  });

  LpGrowthResult r;
  for (std::size_t a = 0; a < N_list.size(); ++a) {
    const double norm = std::pow(p, p / 2.0) * std::pow(std::log(N_list[a]), p / 2.0);
    r.normalized.push_back(mean_estimate(moments[a]).mean / norm);
    if (p == 2.0) r.analytic.push_back(expected_l2_growth(N_list[a], s, setup, identity_multiplier) / norm);
  }
  double growth = 0.0;
  for (std::size_t i = 0; i < r.normalized.size(); ++i)
    for (std::size_t j = i + 1; j < r.normalized.size(); ++j)
      growth = std::max(growth, r.normalized[j] / r.normalized[i]);
  const auto [lo, hi] = std::minmax_element(r.normalized.begin(), r.normalized.end());
  r.spread = *hi / *lo;
  r.report = TestReport::make("lp_growth_p" + std::to_string(static_cast<int>(p)) +
                                  (identity_multiplier ? "_identity" : ""),
                              growth, 0.0, 2.0, S);
  r.report.note("N_list", join(N_list)).note("normalized", join(r.normalized)).note("spread", r.spread)
      .note("s", s).note("multiplier", identity_multiplier ? "identity" : "I_N");
  if (!r.analytic.empty()) r.report.note("analytic", join(r.analytic));
  return r;
}

// ------------------------------------------------------------ propagation

TestReport propagation_test(const RealField& rho1, const RealField& rho2, double T, double R, std::uint64_t seed,
                            const PropagationSetup& setup) {
  const GridSpec& g = setup.initial.v.grid;
  if (!(rho1.grid == g) || !(rho2.grid == g)) throw InvalidArgument("cutoffs and initial data live on different grids");
  NoiseConfig noise = setup.noise;
  noise.seed = seed;
  noise.grid = g;

  auto run = [&](const RealField& rho) {
    SolverConfig cfg(rho);
    cfg.dt = setup.dt;
    cfg.picard_iters = setup.picard_iters;
    cfg.picard_tol = setup.picard_tol;
    cfg.s = setup.s;
    cfg.blowup_threshold = setup.blowup_threshold;
    const WaveState w0{hadamard(rho, setup.initial.v), hadamard(rho, setup.initial.v_t), 0.0};
    NoiseSource src = NoiseSource::live(noise);
    std::vector<WaveState> frames;
    run_local(WaveModes::from(w0), src, T, cfg, std::nullopt,
              [&frames](const WaveModes& w) { frames.push_back(w.state()); });
    return frames;
  };
  const auto a = run(rho1);
  const auto b = run(rho2);

  double sup = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double radius = R - a[k].t;
    for (int i = 0; i < g.n(); ++i)
      for (int j = 0; j < g.n(); ++j)
        if (std::hypot(g.coordinate(i), g.coordinate(j)) < radius)
          sup = std::max(sup, std::abs(a[k].v(i, j) - b[k].v(i, j)));
  }
  TestReport r = TestReport::make("propagation", sup, 0.0, 10.0 * setup.picard_tol, 1);
  r.note("T", T).note("R", R).note("seed", static_cast<double>(seed)).note("picard_tol", setup.picard_tol)
      .note("dt", setup.dt).note("steps", static_cast<double>(a.size() - 1));
  return r;
}

// ----------------------------------------------------------- commutators

RealField random_hs_field(const GridSpec& g, double s, std::uint64_t seed) {
  const NoiseStream rng(seed);
  SpectralField F(g);
  const int n = g.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (g.is_nyquist(i, j)) continue;
      const int k1 = g.wavenumber(i);
      const int k2 = g.wavenumber(j);
      if (k2 < 0 || (k2 == 0 && k1 < 0)) continue;
      const auto z = rng.normals(0, k1, k2);
      const double amp = std::pow(bracket(g.xi_abs(i, j)), -s - 1.0);
      const Complex c = (k1 == 0 && k2 == 0) ? Complex(amp * z[0], 0.0)
                                             : amp / std::numbers::sqrt2 * Complex(z[0], z[1]);
      F(i, j) = c;
      F((n - i) % n, (n - j) % n) = std::conj(c);
    }
  F *= 1.0 / norm_hs(F, 0.0);
  return to_physical(F);
}

std::vector<CommutatorFit> commutator_slope_suite(const std::vector<double>& s_list, const std::vector<int>& k_list,
                                                  const std::vector<double>& N_list,
                                                  const std::vector<std::uint64_t>& seeds, const GridSpec& grid,
                                                  bool mixed) {
  if (N_list.size() < 3) throw InvalidArgument("commutator suite needs at least three cutoffs");
  if (seeds.empty()) throw InvalidArgument("commutator suite needs seeds");
  std::vector<CommutatorFit> out;
  for (double s : s_list)
    for (int k : k_list) {
      if (mixed && (k < 1 || k > 2)) throw InvalidArgument("mixed commutator suite needs k in 1..2");
      if (!mixed && (k < 1 || k > 3)) throw InvalidArgument("commutator suite needs k in 1..3");
      CommutatorFit fit;
      fit.s = s;
      fit.k = k;
      fit.mixed = mixed;
      fit.bound = mixed ? 0.0 : -(1.0 - k * (1.0 - s)) + 0.3;
      bool all_zero = true;
      for (double N : N_list) {
        const MultiplierSpec spec{N, s};
        double acc = 0.0;
        for (std::uint64_t seed : seeds) {
          const RealField v = random_hs_field(grid, s, seed);
          const double h1 = norm_hs(apply_I(to_spectral(v), spec), 1.0);
          double defect;
          if (mixed) {
            NoiseConfig cfg;
            cfg.seed = seed ^ 0xA5A5A5A5ULL;
            cfg.grid = grid;
            cfg.cutoff_N = 0.5 * grid.nyquist_frequency();
            const auto state = advance_convolution(ConvolutionState::zero(grid), 1.0, cfg, NoiseStream(cfg.seed));
            const WickBundle b = wick_powers(state, cfg);
            const RealField g = hadamard(radial_cutoff(grid, 1.0), b.power(3 - k));
            defect = mixed_commutator_defect(v, g, k, spec);
          } else {
            defect = commutator_defect(v, k, spec);
          }
          if (defect != 0.0) all_zero = false;
          acc += defect / std::pow(h1, k);
        }
        fit.statistic.push_back(acc / static_cast<double>(seeds.size()));
      }
      if (!mixed && k == 1) {
        fit.exactly_zero = all_zero;
        fit.pass = all_zero;
      } else {
        std::vector<std::pair<double, double>> xy;
        for (std::size_t a = 0; a < N_list.size(); ++a) xy.emplace_back(N_list[a], fit.statistic[a]);
        fit.fit = loglog_fit(xy);
        fit.pass = fit.fit.slope <= fit.bound;
      }
      out.push_back(fit);
    }
  return out;
}

// ------------------------------------------------------------ energy audit

TestReport energy_audit(const EnergyAuditSetup& setup) {
  SolverConfig cfg(setup.rho);
  cfg.dt = setup.dt;
  cfg.s = setup.spec.s;
  NoiseSource src = NoiseSource::frozen(setup.bundle);
  std::vector<WaveModes> frames;
  run_local(project_to_band(WaveModes::from(setup.initial)), src, setup.duration, cfg, setup.spec,
            [&frames](const WaveModes& w) { frames.push_back(w); });
  if (frames.size() < 3) throw InvalidArgument("energy audit needs at least two steps");
  const LocalizedNoise noise = LocalizedNoise::from(setup.bundle, setup.rho);
  const double h = frames[1].t - frames[0].t;

  std::vector<double> E;
  for (const auto& f : frames) E.push_back(modified_energy(f, setup.spec).total);
  double worst_gap = 0.0;
  double scale = 0.0;
  EnergyDerivative sample;
  for (std::size_t j = 1; j + 1 < frames.size(); ++j) {
    const EnergyDerivative d = energy_derivative_terms(frames[j], noise, setup.spec);
    const double fd = (E[j + 1] - E[j - 1]) / (2.0 * h);
    worst_gap = std::max(worst_gap, std::abs(fd - d.sum()));
    scale = std::max(scale, std::abs(d.sum()));
    if (j == frames.size() / 2) sample = d;
  }
  const double stat = scale > 0.0 ? worst_gap / scale : worst_gap;
  TestReport r = TestReport::make("energy_audit", stat, 0.0, setup.tolerance, static_cast<std::int64_t>(frames.size()));
  r.note("dt", h).note("N", setup.spec.N).note("s", setup.spec.s).note("max_abs_derivative", scale)
      .note("worst", sample.worst).note("tame", sample.tame).note("commutators", sample.commutators)
      .note("harmless", sample.harmless);
  return r;
}

TestReport conservation_test(const WaveState& initial, double dt, double T, double tolerance) {
  SolverConfig cfg(RealField(initial.v.grid));
  cfg.dt = dt;
  NoiseSource src = NoiseSource::off(initial.v.grid);
  const LocalRun run = run_local(project_to_band(WaveModes::from(initial)), src, T, cfg);
  const double H0 = run.records.front().energy.hamiltonian();
  double drift = 0.0;
  for (const auto& rec : run.records) drift = std::max(drift, std::abs(rec.energy.hamiltonian() - H0));
  const double stat = drift / std::max(H0, std::numeric_limits<double>::min()) / T;
  TestReport r = TestReport::make("conservation", stat, 0.0, tolerance, static_cast<std::int64_t>(run.records.size()));
  r.note("H0", H0).note("dt", dt).note("T", T).note("n", initial.v.grid.n());
  return r;
}

}  // namespace snlw

#include "snlw/noise.hpp"

#include <cmath>
#include <numbers>

#include "snlw/errors.hpp"

namespace snlw {

void NoiseConfig::validate() const {
  if (!(cutoff_N > 0.0)) throw InvalidArgument("noise cutoff N must be positive");
  if (cutoff_N > grid.nyquist_frequency() * (1.0 + 1e-12))
    throw InvalidArgument("noise cutoff N exceeds the grid Nyquist frequency pi*n/L");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
    throw InvalidArgument("noise amplitude must be finite and non-negative");
}

bool NoiseConfig::retains(int i, int j) const {
  return !grid.is_nyquist(i, j) && grid.xi_abs(i, j) <= cutoff_N;
}

double gamma(double t, double xi_abs) {
  if (t < 0.0 || xi_abs < 0.0) throw InvalidArgument("gamma needs t >= 0 and |xi| >= 0");
  const double x = 2.0 * t * xi_abs;
  if (x < 0.5) {
    // 6 (x - sin x) / x^3 by its Taylor series; avoids the cancellation.
    const double x2 = x * x;
    const double series =
        1.0 - x2 / 20.0 *
                  (1.0 - x2 / 42.0 *
                             (1.0 - x2 / 72.0 * (1.0 - x2 / 110.0 * (1.0 - x2 / 156.0 * (1.0 - x2 / 210.0)))));
    return t * t * t / 3.0 * series;
  }
  return (x - std::sin(x)) / (4.0 * xi_abs * xi_abs * xi_abs);
}

StepCovariance step_covariances(double h, double xi_abs) {
  if (!(h > 0.0)) throw InvalidArgument("step covariances need h > 0");
  if (xi_abs < 0.0) throw InvalidArgument("step covariances need |xi| >= 0");
  StepCovariance c;
  c.var_a = gamma(h, xi_abs);
  if (xi_abs == 0.0) {
    c.var_b = h;
    c.cov_ab = 0.5 * h * h;
  } else {
    const double s = std::sin(h * xi_abs);
    c.var_b = 0.5 * h + std::sin(2.0 * h * xi_abs) / (4.0 * xi_abs);
    c.cov_ab = s * s / (2.0 * xi_abs * xi_abs);
  }
  return c;
}

ConvolutionState ConvolutionState::zero(const GridSpec& grid) {
  return ConvolutionState{SpectralField(grid), SpectralField(grid), 0.0, 0};
}

ConvolutionState advance_convolution(const ConvolutionState& state, double h, const NoiseConfig& cfg,
                                     const NoiseStream& rng) {
  if (!(h > 0.0)) throw InvalidArgument("advance_convolution needs h > 0");
  cfg.validate();
  const GridSpec& g = cfg.grid;
  if (!(state.psi_hat.grid == g)) throw InvalidArgument("convolution state grid mismatch");

  ConvolutionState next = ConvolutionState::zero(g);
  next.t = state.t + h;
  next.steps = state.steps + 1;
  const double scale = cfg.amplitude / g.L();
  const int n = g.n();

  for (int i = 0; i < n; ++i) {
    const int k1 = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const int k2 = g.wavenumber(j);
      // half lattice: k2 > 0, or k2 == 0 and k1 >= 0; mirrors filled below
      if (k2 < 0 || (k2 == 0 && k1 < 0)) continue;
      if (!cfg.retains(i, j)) continue;

      const double w = g.xi_abs(i, j);
      const Complex a = state.psi_hat(i, j);
      const Complex b = state.dpsi_hat(i, j);
      Complex a_new;
      Complex b_new;
      if (w == 0.0) {
        a_new = a + h * b;
        b_new = b;
      } else {
        const double c = std::cos(h * w);
        const double s = std::sin(h * w);
        a_new = c * a + (s / w) * b;
        b_new = -w * s * a + c * b;
      }

      const StepCovariance cov = step_covariances(h, w);
      const double l11 = std::sqrt(cov.var_a);
      const double l21 = l11 > 0.0 ? cov.cov_ab / l11 : 0.0;
      const double l22 = std::sqrt(std::max(0.0, cov.var_b - l21 * l21));
      const auto z = rng.normals(next.steps, k1, k2);

      if (k1 == 0 && k2 == 0) {
        a_new += scale * (l11 * z[0]);
        b_new += scale * (l21 * z[0] + l22 * z[1]);
      } else {
        const double r = scale / std::numbers::sqrt2;
        a_new += r * Complex(l11 * z[0], l11 * z[2]);
        b_new += r * Complex(l21 * z[0] + l22 * z[1], l21 * z[2] + l22 * z[3]);
      }

      next.psi_hat(i, j) = a_new;
      next.dpsi_hat(i, j) = b_new;
      const int mi = (n - i) % n;
      const int mj = (n - j) % n;
      next.psi_hat(mi, mj) = std::conj(a_new);
      next.dpsi_hat(mi, mj) = std::conj(b_new);
    }
  }
  // the zero mode is its own mirror and must stay real
  next.psi_hat(0, 0) = next.psi_hat(0, 0).real();
  next.dpsi_hat(0, 0) = next.dpsi_hat(0, 0).real();
  return next;
}

ConvolutionState truncate(const ConvolutionState& state, double cutoff_N) {
  return ConvolutionState{truncate_ball(state.psi_hat, cutoff_N), truncate_ball(state.dpsi_hat, cutoff_N),
                          state.t, state.steps};
}

double counterterm_sigma(const NoiseConfig& cfg, double t) {
  cfg.validate();
  if (t < 0.0) throw InvalidArgument("counterterm needs t >= 0");
  const GridSpec& g = cfg.grid;
  double acc = 0.0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      if (cfg.retains(i, j)) acc += gamma(t, g.xi_abs(i, j));
  return cfg.amplitude * cfg.amplitude * acc / (g.L() * g.L());
}

double continuum_sigma(const NoiseConfig& cfg, double t) {
  // (1/2pi) int_0^N gamma(t, r) r dr, composite Simpson
  const int panels = 20000;
  const double h = cfg.cutoff_N / panels;
  double acc = 0.0;
  for (int k = 0; k <= panels; ++k) {
    const double r = k * h;
    const double w = (k == 0 || k == panels) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += w * gamma(t, r) * r;
  }
  acc *= h / 3.0;
  return cfg.amplitude * cfg.amplitude * acc / (2.0 * std::numbers::pi);
}

double hermite(int k, double x, double sigma) {
  switch (k) {
    case 0: return 1.0;
    case 1: return x;
    case 2: return x * x - sigma;
    case 3: return x * x * x - 3.0 * sigma * x;
    default: throw InvalidArgument("Hermite polynomials are provided for k = 0..3 only");
  }
}

WickBundle WickBundle::zero(const GridSpec& grid, double t) {
  return WickBundle{RealField(grid), RealField(grid), RealField(grid), 0.0, t};
}

WickBundle WickBundle::from_field(RealField psi1, double sigma, double t) {
  WickBundle b{psi1, RealField(psi1.grid), RealField(psi1.grid), sigma, t};
  for (std::size_t k = 0; k < psi1.values.size(); ++k) {
    const double x = psi1.values[k];
    b.psi2.values[k] = hermite(2, x, sigma);
    b.psi3.values[k] = hermite(3, x, sigma);
  }
  return b;
}

const RealField& WickBundle::power(int l) const {
  switch (l) {
    case 1: return psi1;
    case 2: return psi2;
    case 3: return psi3;
    default: throw InvalidArgument("Wick powers are provided for l = 1..3");
  }
}

WickBundle wick_powers(const ConvolutionState& state, const NoiseConfig& cfg, double sigma_scale) {
  const double sigma = sigma_scale == 0.0 ? 0.0 : sigma_scale * counterterm_sigma(cfg, state.t);
  return WickBundle::from_field(to_physical(state.psi_hat), sigma, state.t);
}

// -------------------------------------------------------------- NoiseSource

NoiseSource NoiseSource::off(const GridSpec& grid) { return NoiseSource(Kind::Off, WickBundle::zero(grid)); }

NoiseSource NoiseSource::frozen(WickBundle bundle) { return NoiseSource(Kind::Frozen, std::move(bundle)); }

NoiseSource NoiseSource::live(const NoiseConfig& cfg, double sigma_scale) {
  cfg.validate();
  NoiseSource src(Kind::Live, WickBundle::zero(cfg.grid));
  src.cfg_ = cfg;
  src.state_ = ConvolutionState::zero(cfg.grid);
  src.sigma_scale_ = sigma_scale;
  return src;
}

void NoiseSource::advance(double h) {
  switch (kind_) {
    case Kind::Off:
    case Kind::Frozen:
      bundle_.t += h;
      return;
    case Kind::Live: {
      *state_ = advance_convolution(*state_, h, *cfg_, NoiseStream(cfg_->seed));
      bundle_ = wick_powers(*state_, *cfg_, sigma_scale_);
      return;
    }
  }
}

}  // namespace snlw

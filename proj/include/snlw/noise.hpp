#pragma once

#include <cstdint>
#include <optional>

#include "snlw/grid.hpp"
#include "snlw/rng.hpp"

namespace snlw {

/// Truncated space-time white noise on the periodic box.
///
/// The noise is expanded in the orthonormal basis exp(i xi.x)/L, so a retained
/// mode's Fourier coefficient receives complex Brownian increments of variance
/// amplitude^2 * dt / L^2.
struct NoiseConfig {
  std::uint64_t seed = 0;
  double cutoff_N = 1.0;
  GridSpec grid{16.0, 64};
  double amplitude = 1.0;

  /// Throws InvalidArgument unless 0 < cutoff_N <= pi*n/L and amplitude >= 0.
  void validate() const;
  /// Mode is inside the closed ball |xi| <= N and off the Nyquist lines.
  bool retains(int i, int j) const;
};

/// gamma(t, xi) = int_0^t sin^2((t - t')|xi|) / |xi|^2 dt', with the t^3/3 limit at xi = 0.
double gamma(double t, double xi_abs);

/// Covariance of (psi_hat, dpsi_hat) injected by unit white noise over a step h.
struct StepCovariance {
  double var_a = 0.0;
  double var_b = 0.0;
  double cov_ab = 0.0;
};
StepCovariance step_covariances(double h, double xi_abs);

/// Mode coefficients of the truncated stochastic convolution psi_N and its time
/// derivative. Modes outside the cutoff ball stay exactly zero.
struct ConvolutionState {
  SpectralField psi_hat;
  SpectralField dpsi_hat;
  double t = 0.0;
  std::uint64_t steps = 0;

  static ConvolutionState zero(const GridSpec& grid);
};

/// Exact-in-law update over a step h: free wave rotation of every retained
/// mode plus a Gaussian pair drawn with step_covariances.
ConvolutionState advance_convolution(const ConvolutionState& state, double h, const NoiseConfig& cfg,
                                     const NoiseStream& rng);

/// Restriction of a state to a smaller cutoff ball.
ConvolutionState truncate(const ConvolutionState& state, double cutoff_N);

/// sigma_N(t) = E[psi_N(t,x)^2] for the discrete model: the lattice sum of
/// amplitude^2 gamma(t, xi) / L^2 over retained modes.
double counterterm_sigma(const NoiseConfig& cfg, double t);
/// Continuum counterpart amplitude^2 (2 pi)^{-2} int_{|xi|<=N} gamma(t, xi) dxi.
double continuum_sigma(const NoiseConfig& cfg, double t);

/// Hermite polynomial H_k(x; sigma), k = 0..3.
double hermite(int k, double x, double sigma);

/// Physical-space Wick powers :psi^l: for l = 1, 2, 3 at one time.
struct WickBundle {
  RealField psi1;
  RealField psi2;
  RealField psi3;
  double sigma = 0.0;
  double t = 0.0;

  static WickBundle zero(const GridSpec& grid, double t = 0.0);
  /// Builds psi2, psi3 from psi1 with the Hermite polynomials at variance sigma.
  static WickBundle from_field(RealField psi1, double sigma, double t);
  const RealField& power(int l) const;
};

/// sigma_scale multiplies the exact counterterm: 0 disables the
/// renormalisation, 1.1 is the +10% fault used by negative controls.
WickBundle wick_powers(const ConvolutionState& state, const NoiseConfig& cfg, double sigma_scale = 1.0);

/// Supplies Wick bundles to the solver along its time grid.
class NoiseSource {
 public:
  /// No forcing at all.
  static NoiseSource off(const GridSpec& grid);
  /// The same bundle at every time; used for deterministic runs.
  static NoiseSource frozen(WickBundle bundle);
  /// Stochastic convolution driven by cfg, starting from zero at t = 0.
  static NoiseSource live(const NoiseConfig& cfg, double sigma_scale = 1.0);

  const WickBundle& current() const { return bundle_; }
  double time() const { return bundle_.t; }
  void advance(double h);
  bool is_off() const { return kind_ == Kind::Off; }

 private:
  enum class Kind { Off, Frozen, Live };
  NoiseSource(Kind kind, WickBundle bundle) : kind_(kind), bundle_(std::move(bundle)) {}

  Kind kind_;
  WickBundle bundle_;
  std::optional<NoiseConfig> cfg_;
  std::optional<ConvolutionState> state_;
  double sigma_scale_ = 1.0;
};

}  // namespace snlw

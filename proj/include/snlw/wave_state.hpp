#pragma once

#include "snlw/grid.hpp"
#include "snlw/noise.hpp"

namespace snlw {

/// Shifted unknown v = u - psi and its time derivative, in physical space.
struct WaveState {
  RealField v;
  RealField v_t;
  double t = 0.0;

  static WaveState zero(const GridSpec& grid, double t = 0.0) {
    return WaveState{RealField(grid), RealField(grid), t};
  }
};

/// The same state held by Fourier coefficients; the solver works on this form.
struct WaveModes {
  SpectralField v;
  SpectralField v_t;
  double t = 0.0;

  static WaveModes zero(const GridSpec& grid, double t = 0.0) {
    return WaveModes{SpectralField(grid), SpectralField(grid), t};
  }
  static WaveModes from(const WaveState& w) { return WaveModes{to_spectral(w.v), to_spectral(w.v_t), w.t}; }
  WaveState state() const { return WaveState{to_physical(v), to_physical(v_t), t}; }
  const GridSpec& grid() const { return v.grid; }
};

/// The localized noise coefficients g_l = rho * :psi^l:, l = 1, 2, 3, as
/// spectra with the Nyquist row/column removed.
struct LocalizedNoise {
  SpectralField g1;
  SpectralField g2;
  SpectralField g3;
  bool vanishes = true;

  static LocalizedNoise zero(const GridSpec& grid);
  static LocalizedNoise from(const WickBundle& bundle, const RealField& rho);
  const SpectralField& g(int l) const;
};

/// P[v^3] + 3 P[v^2 g1] + 3 P[v g2] + g3, with products evaluated on the
/// 2x refined grid and projected back (exact on the dealiased band).
/// No dealiasing mask is applied.
SpectralField cubic_forcing(const SpectralField& v, const LocalizedNoise& noise);

}  // namespace snlw

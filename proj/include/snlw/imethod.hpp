#pragma once

#include <vector>

#include "snlw/grid.hpp"
#include "snlw/noise.hpp"
#include "snlw/wave_state.hpp"

namespace snlw {

/// Profile used to join m(r) = 1 (r <= 1) to m(r) = r^{-(1-s)} (r >= 3).
enum class TransitionProfile {
  /// m(r) = exp(-(1-s) chi(ln r / ln 3) ln r), chi(u) = 6u^5 - 15u^4 + 10u^3.
  QuinticSmoothstep,
};

/// Quintic smoothstep clipped to [0, 1]; C^2 at both ends.
double smoothstep5(double u);

struct MultiplierSpec {
  double N = 1.0;
  double s = 0.9;
  TransitionProfile transition = TransitionProfile::QuinticSmoothstep;

  /// Throws InvalidArgument unless N > 0 and 4/5 < s < 1.
  void validate() const;
};

/// The rescaled multiplier m(r), r = |xi| / N.
double m_value(double r, const MultiplierSpec& spec);
/// m_N(xi) = m(|xi| / N).
double m_N(double xi_abs, const MultiplierSpec& spec);
/// m_N evaluated on the lattice of g, indexed like SpectralField::coeffs.
std::vector<double> multiplier_table(const GridSpec& g, const MultiplierSpec& spec);

/// The smoothing operator I_N.
SpectralField apply_I(const SpectralField& F, const MultiplierSpec& spec);
RealField apply_I(const RealField& f, const MultiplierSpec& spec);

/// Components of E(v, v_t) = 1/2 int v_t^2 + 1/2 int v^2 + 1/2 int |grad v|^2 + 1/4 int v^4.
struct EnergySnapshot {
  double total = 0.0;
  double kinetic = 0.0;
  double mass = 0.0;
  double gradient = 0.0;
  double quartic = 0.0;
  double t = 0.0;
  double N = 0.0;

  /// total - mass: the conserved quantity of v_tt - Lap v + v^3 = 0.
  double hamiltonian() const { return kinetic + gradient + quartic; }
};

/// E(v, v_t) with no smoothing; N is reported as 0. The quartic term is
/// evaluated exactly for band-limited v (square formed on a 2x grid).
EnergySnapshot energy(const WaveModes& w);
EnergySnapshot energy(const WaveState& w);
/// E(I_N v, I_N v_t).
EnergySnapshot modified_energy(const WaveModes& w, const MultiplierSpec& spec);
EnergySnapshot modified_energy(const WaveState& w, const MultiplierSpec& spec);

/// ||(I v)^k - I(v^k)||_{L^2}, k = 1..3. Products are formed on a k-times
/// refined grid where they are exact for the trigonometric interpolant of v.
double commutator_defect(const RealField& v, int k, const MultiplierSpec& spec);
/// ||I(v^k g) - (I v)^k I(g)||_{L^2}, k = 1..2, on a (k+1)-times refined grid.
double mixed_commutator_defect(const RealField& v, const RealField& g, int k, const MultiplierSpec& spec);

/// The four pieces of dE(Iv, Iv_t)/dt along v_tt - Lap v = -F (see cubic_forcing):
///   worst       = -3 int Iv_t (Iv)^2 I(g1)
///   tame        = -3 int Iv_t Iv I(g2) - int Iv_t I(g3)
///   commutators =  int Iv_t [ (Iv)^3 - I(v^3) + 3((Iv)^2 I(g1) - I(v^2 g1)) + 3(Iv I(g2) - I(v g2)) ]
///   harmless    =  int Iv_t Iv
/// All products are evaluated as in cubic_forcing, so for v, v_t in the
/// dealiased band the sum equals the exact derivative of the discrete energy.
struct EnergyDerivative {
  double worst = 0.0;
  double tame = 0.0;
  double commutators = 0.0;
  double harmless = 0.0;

  double sum() const { return worst + tame + commutators + harmless; }
};

EnergyDerivative energy_derivative_terms(const WaveModes& w, const LocalizedNoise& noise,
                                         const MultiplierSpec& spec);
EnergyDerivative energy_derivative_terms(const WaveState& w, const WickBundle& bundle, const RealField& rho,
                                         const MultiplierSpec& spec);

}  // namespace snlw

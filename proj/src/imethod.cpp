#include "snlw/imethod.hpp"

#include <cmath>
#include <numbers>

#include "snlw/errors.hpp"

namespace snlw {

double smoothstep5(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (u * (6.0 * u - 15.0) + 10.0);
}

void MultiplierSpec::validate() const {
  if (!(N > 0.0) || !std::isfinite(N)) throw InvalidArgument("multiplier N must be positive and finite");
  if (!(s > 0.8 && s < 1.0)) throw InvalidArgument("multiplier needs 4/5 < s < 1");
}

double m_value(double r, const MultiplierSpec& spec) {
  if (r <= 1.0) return 1.0;
  const double lr = std::log(r);
  const double decay = 1.0 - spec.s;
  if (r >= 3.0) return std::exp(-decay * lr);
  switch (spec.transition) {
    case TransitionProfile::QuinticSmoothstep:
      return std::exp(-decay * smoothstep5(lr / std::log(3.0)) * lr);
  }
  throw InvalidArgument("unknown transition profile");
}

double m_N(double xi_abs, const MultiplierSpec& spec) { return m_value(xi_abs / spec.N, spec); }

std::vector<double> multiplier_table(const GridSpec& g, const MultiplierSpec& spec) {
  spec.validate();
  return radial_table(g, [&spec](double xi) { return m_N(xi, spec); });
}

SpectralField apply_I(const SpectralField& F, const MultiplierSpec& spec) {
  return apply_multiplier_table(F, multiplier_table(F.grid, spec));
}

RealField apply_I(const RealField& f, const MultiplierSpec& spec) {
  return to_physical(apply_I(to_spectral(f), spec));
}

// ------------------------------------------------------------------- energy

namespace {

EnergySnapshot energy_of(const SpectralField& v, const SpectralField& v_t, double t, double N) {
  const GridSpec& g = v.grid;
  const double area = g.L() * g.L();
  double kin = 0.0;
  double mass = 0.0;
  double grad = 0.0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      if (g.is_nyquist(i, j)) continue;
      const double xi = g.xi_abs(i, j);
      const double a = std::norm(v(i, j));
      kin += std::norm(v_t(i, j));
      mass += a;
      grad += xi * xi * a;
    }

  const ProductGrid pg(g, 2);
  RealField sq = pg.lift(v);
  for (auto& x : sq.values) x *= x;
  double quart = 0.0;
  for (const auto& c : to_spectral(sq).coeffs) quart += std::norm(c);

  EnergySnapshot e;
  e.kinetic = 0.5 * area * kin;
  e.mass = 0.5 * area * mass;
  e.gradient = 0.5 * area * grad;
  e.quartic = 0.25 * area * quart;
  e.total = e.kinetic + e.mass + e.gradient + e.quartic;
  e.t = t;
  e.N = N;
  return e;
}

}  // namespace

EnergySnapshot energy(const WaveModes& w) { return energy_of(w.v, w.v_t, w.t, 0.0); }
EnergySnapshot energy(const WaveState& w) { return energy(WaveModes::from(w)); }

EnergySnapshot modified_energy(const WaveModes& w, const MultiplierSpec& spec) {
  const auto table = multiplier_table(w.grid(), spec);
  return energy_of(apply_multiplier_table(w.v, table), apply_multiplier_table(w.v_t, table), w.t, spec.N);
}

EnergySnapshot modified_energy(const WaveState& w, const MultiplierSpec& spec) {
  return modified_energy(WaveModes::from(w), spec);
}

// ------------------------------------------------------------- commutators

namespace {

RealField power(RealField f, int k) {
  for (auto& x : f.values) x = std::pow(x, k);
  return f;
}

}  // namespace

double commutator_defect(const RealField& v, int k, const MultiplierSpec& spec) {
  if (k < 1 || k > 3) throw InvalidArgument("commutator defect needs k in 1..3");
  const GridSpec fine = refined(v.grid, k);
  const auto table = multiplier_table(fine, spec);
  const SpectralField vf = resample(to_spectral(v), fine);
  const SpectralField Ivf = apply_multiplier_table(vf, table);
  if (k == 1) return norm_hs(Ivf - apply_multiplier_table(vf, table), 0.0);
  const SpectralField lhs = to_spectral(power(to_physical(Ivf), k));
  const SpectralField rhs = apply_multiplier_table(to_spectral(power(to_physical(vf), k)), table);
  return norm_hs(lhs - rhs, 0.0);
}

double mixed_commutator_defect(const RealField& v, const RealField& g, int k, const MultiplierSpec& spec) {
  if (k < 1 || k > 2) throw InvalidArgument("mixed commutator defect needs k in 1..2");
  if (!(v.grid == g.grid)) throw InvalidArgument("fields live on different grids");
  const GridSpec fine = refined(v.grid, k + 1);
  const auto table = multiplier_table(fine, spec);
  const SpectralField vf = resample(to_spectral(v), fine);
  const SpectralField gf = resample(to_spectral(g), fine);
  const RealField V = to_physical(vf);
  const RealField IV = to_physical(apply_multiplier_table(vf, table));
  const RealField G = to_physical(gf);
  const RealField IG = to_physical(apply_multiplier_table(gf, table));
  RealField plain(fine);
  RealField smoothed(fine);
  for (std::size_t q = 0; q < plain.values.size(); ++q) {
    plain.values[q] = std::pow(V.values[q], k) * G.values[q];
    smoothed.values[q] = std::pow(IV.values[q], k) * IG.values[q];
  }
  const SpectralField defect = apply_multiplier_table(to_spectral(plain), table) - to_spectral(smoothed);
  return norm_hs(defect, 0.0);
}

// ------------------------------------------------------ energy derivative

EnergyDerivative energy_derivative_terms(const WaveModes& w, const LocalizedNoise& noise,
                                         const MultiplierSpec& spec) {
  const GridSpec& g = w.grid();
  const auto table = multiplier_table(g, spec);
  const ProductGrid pg(g, 2);
  auto I = [&table](const SpectralField& F) { return apply_multiplier_table(F, table); };

  const SpectralField Iv = I(w.v);
  const SpectralField Iv_t = I(w.v_t);
  const RealField A = pg.lift(Iv);
  const RealField V = pg.lift(w.v);

  EnergyDerivative d;
  d.harmless = l2_inner(Iv_t, Iv);

  RealField buf(pg.fine());
  auto fill = [&buf](auto&& f) {
    for (std::size_t q = 0; q < buf.values.size(); ++q) buf.values[q] = f(q);
  };

  fill([&](std::size_t q) { return A.values[q] * A.values[q] * A.values[q]; });
  SpectralField comm = pg.project(buf);
  fill([&](std::size_t q) { return V.values[q] * V.values[q] * V.values[q]; });
  comm -= I(pg.project(buf));

  if (!noise.vanishes) {
    const RealField G1 = pg.lift(noise.g1);
    const RealField G2 = pg.lift(noise.g2);
    const RealField IG1 = pg.lift(I(noise.g1));
    const RealField IG2 = pg.lift(I(noise.g2));

    fill([&](std::size_t q) { return A.values[q] * A.values[q] * IG1.values[q]; });
    const SpectralField worst_density = pg.project(buf);
    fill([&](std::size_t q) { return A.values[q] * IG2.values[q]; });
    const SpectralField tame_density = pg.project(buf);

    d.worst = -3.0 * l2_inner(Iv_t, worst_density);
    d.tame = -3.0 * l2_inner(Iv_t, tame_density) - l2_inner(Iv_t, I(noise.g3));

    fill([&](std::size_t q) { return V.values[q] * V.values[q] * G1.values[q]; });
    comm += 3.0 * (worst_density - I(pg.project(buf)));
    fill([&](std::size_t q) { return V.values[q] * G2.values[q]; });
    comm += 3.0 * (tame_density - I(pg.project(buf)));
  }
  d.commutators = l2_inner(Iv_t, comm);
  return d;
}

EnergyDerivative energy_derivative_terms(const WaveState& w, const WickBundle& bundle, const RealField& rho,
                                         const MultiplierSpec& spec) {
  return energy_derivative_terms(WaveModes::from(w), LocalizedNoise::from(bundle, rho), spec);
}

}  // namespace snlw

#include "snlw/errors.hpp"
#include "snlw/wave_state.hpp"

namespace snlw {

LocalizedNoise LocalizedNoise::zero(const GridSpec& grid) {
  return LocalizedNoise{SpectralField(grid), SpectralField(grid), SpectralField(grid), true};
}

LocalizedNoise LocalizedNoise::from(const WickBundle& bundle, const RealField& rho) {
  const GridSpec& g = rho.grid;
  if (!(bundle.psi1.grid == g)) throw InvalidArgument("noise bundle and cutoff live on different grids");
  auto localize = [&](const RealField& p) { return resample(to_spectral(hadamard(rho, p)), g); };
  LocalizedNoise out{localize(bundle.psi1), localize(bundle.psi2), localize(bundle.psi3), false};
  bool all_zero = true;
  for (const auto* f : {&out.g1, &out.g2, &out.g3})
    for (const auto& c : f->coeffs)
      if (c != Complex{}) all_zero = false;
  out.vanishes = all_zero;
  return out;
}

const SpectralField& LocalizedNoise::g(int l) const {
  switch (l) {
    case 1: return g1;
    case 2: return g2;
    case 3: return g3;
    default: throw InvalidArgument("localized noise has l = 1..3");
  }
}

SpectralField cubic_forcing(const SpectralField& v, const LocalizedNoise& noise) {
  const ProductGrid pg(v.grid, 2);
  const RealField V = pg.lift(v);
  RealField fine(pg.fine());
  if (noise.vanishes) {
    for (std::size_t k = 0; k < fine.values.size(); ++k) {
      const double x = V.values[k];
      fine.values[k] = x * x * x;
    }
    return pg.project(fine);
  }
  const RealField G1 = pg.lift(noise.g1);
  const RealField G2 = pg.lift(noise.g2);
  for (std::size_t k = 0; k < fine.values.size(); ++k) {
    const double x = V.values[k];
    fine.values[k] = x * (x * (x + 3.0 * G1.values[k]) + 3.0 * G2.values[k]);
  }
  SpectralField out = pg.project(fine);
  out += noise.g3;
  return out;
}

}  // namespace snlw

#include "snlw/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fft.hpp"
#include "snlw/errors.hpp"

namespace snlw {

GridSpec::GridSpec(double side_length, int points_per_side)
    : side_length_(side_length), n_(points_per_side) {
  if (!(side_length > 0.0) || !std::isfinite(side_length))
    throw InvalidArgument("grid side length must be positive and finite");
  if (points_per_side < 4 || points_per_side % 2 != 0)
    throw InvalidArgument("grid needs an even number of points per side, at least 4");
}

double GridSpec::frequency(int index) const {
  return 2.0 * std::numbers::pi * wavenumber(index) / side_length_;
}

double GridSpec::xi_abs(int i, int j) const { return std::hypot(frequency(i), frequency(j)); }

double GridSpec::nyquist_frequency() const { return std::numbers::pi * n_ / side_length_; }

GridSpec refined(const GridSpec& g, int factor) {
  if (factor < 1) throw InvalidArgument("refinement factor must be >= 1");
  return GridSpec(g.L(), g.n() * factor);
}

// ---------------------------------------------------------------- RealField

RealField::RealField(const GridSpec& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != g.size()) throw InvalidArgument("field size does not match grid");
}

RealField RealField::sample(const GridSpec& g, const std::function<double(double, double)>& f) {
  RealField out(g);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) out(i, j) = f(g.coordinate(i), g.coordinate(j));
  return out;
}

namespace {
void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw InvalidArgument("fields live on different grids");
}
}  // namespace

RealField& RealField::operator+=(const RealField& o) {
  require_same_grid(grid, o.grid);
  for (std::size_t k = 0; k < values.size(); ++k) values[k] += o.values[k];
  return *this;
}

RealField& RealField::operator-=(const RealField& o) {
  require_same_grid(grid, o.grid);
  for (std::size_t k = 0; k < values.size(); ++k) values[k] -= o.values[k];
  return *this;
}

RealField& RealField::operator*=(double a) {
  for (auto& v : values) v *= a;
  return *this;
}

bool RealField::all_finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

RealField operator+(RealField a, const RealField& b) { return a += b; }
RealField operator-(RealField a, const RealField& b) { return a -= b; }
RealField operator*(double a, RealField f) { return f *= a; }

RealField hadamard(const RealField& a, const RealField& b) {
  require_same_grid(a.grid, b.grid);
  RealField out(a.grid);
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = a.values[k] * b.values[k];
  return out;
}

// ------------------------------------------------------------ SpectralField

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(grid, o.grid);
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += o.coeffs[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(grid, o.grid);
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] -= o.coeffs[k];
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : coeffs) c *= a;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }

// --------------------------------------------------------------- transforms

SpectralField to_spectral(const RealField& f) {
  SpectralField out(f.grid);
  detail::forward_full(f.values.data(), out.coeffs.data(), f.grid.n());
  return out;
}

double hermitian_defect(const SpectralField& F) {
  const int n = F.grid.n();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex& a = F(i, j);
      const Complex& b = F((n - i) % n, (n - j) % n);
      worst = std::max(worst, std::abs(a - std::conj(b)));
    }
  return worst;
}

SpectralField symmetrize(const SpectralField& F) {
  const int n = F.grid.n();
  SpectralField out(F.grid);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = 0.5 * (F(i, j) + std::conj(F((n - i) % n, (n - j) % n)));
  return out;
}

RealField to_physical(const SpectralField& F) {
  double scale = 0.0;
  for (const auto& c : F.coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InvalidArgument("non-finite Fourier coefficient");
    scale = std::max(scale, std::abs(c));
  }
  if (hermitian_defect(F) > 1e-10 * std::max(scale, std::numeric_limits<double>::min()))
    throw InvalidArgument("spectrum is not Hermitian-symmetric; symmetrize it first");
  RealField out(F.grid);
  detail::inverse_full(F.coeffs.data(), out.values.data(), F.grid.n());
  return out;
}

// -------------------------------------------------------------- multipliers

SpectralField apply_fourier_multiplier(const SpectralField& F,
                                       const std::function<double(double, double)>& m) {
  const GridSpec& g = F.grid;
  SpectralField out(g);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      const double w = m(g.frequency(i), g.frequency(j));
      if (!std::isfinite(w)) throw InvalidArgument("non-finite Fourier multiplier value");
      out(i, j) = w * F(i, j);
    }
  return out;
}

SpectralField apply_radial_multiplier(const SpectralField& F, const std::function<double(double)>& m) {
  return apply_multiplier_table(F, radial_table(F.grid, m));
}

std::vector<double> radial_table(const GridSpec& g, const std::function<double(double)>& m) {
  std::vector<double> table(g.size());
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) table[g.flat(i, j)] = m(g.xi_abs(i, j));
  return table;
}

SpectralField apply_multiplier_table(const SpectralField& F, std::span<const double> table) {
  if (table.size() != F.coeffs.size()) throw InvalidArgument("multiplier table size mismatch");
  SpectralField out(F.grid);
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (!std::isfinite(table[k])) throw InvalidArgument("non-finite Fourier multiplier value");
    out.coeffs[k] = table[k] * F.coeffs[k];
  }
  return out;
}

SpectralField truncate_ball(const SpectralField& F, double radius) {
  return apply_radial_multiplier(F, [radius](double xi) { return xi <= radius ? 1.0 : 0.0; });
}

bool in_dealiased_band(const GridSpec& g, int i, int j) {
  const int k1 = std::abs(g.wavenumber(i));
  const int k2 = std::abs(g.wavenumber(j));
  // max(|k1|,|k2|) <= n/3, kept in integer arithmetic
  return 3 * std::max(k1, k2) <= g.n();
}

SpectralField dealias_cubic(const SpectralField& F) {
  const GridSpec& g = F.grid;
  SpectralField out(g);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      if (in_dealiased_band(g, i, j)) out(i, j) = F(i, j);
  return out;
}

// -------------------------------------------------------------------- norms

double norm_hs(const SpectralField& F, double sigma) {
  const GridSpec& g = F.grid;
  double acc = 0.0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      const double w = sigma == 0.0 ? 1.0 : std::pow(bracket(g.xi_abs(i, j)), 2.0 * sigma);
      acc += w * std::norm(F(i, j));
    }
  return g.L() * std::sqrt(acc);
}

double norm_hs(const RealField& f, double sigma) { return norm_hs(to_spectral(f), sigma); }

double lp_norm(const RealField& f, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw InvalidArgument("L^p norm needs p >= 1");
  const double cell = f.grid.dx() * f.grid.dx();
  double acc = 0.0;
  if (p == 2.0) {
    for (double v : f.values) acc += v * v;
  } else {
    for (double v : f.values) acc += std::pow(std::abs(v), p);
  }
  return std::pow(acc * cell, 1.0 / p);
}

double norm_w_sigma_p(const RealField& f, double sigma, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("W^{sigma,p} norm needs p >= 1");
  if (sigma == 0.0) return lp_norm(f, p);
  const auto bessel = apply_radial_multiplier(
      to_spectral(f), [sigma](double xi) { return std::pow(bracket(xi), sigma); });
  return lp_norm(to_physical(bessel), p);
}

double l2_inner(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid);
  double acc = 0.0;
  for (std::size_t k = 0; k < a.coeffs.size(); ++k)
    acc += a.coeffs[k].real() * b.coeffs[k].real() + a.coeffs[k].imag() * b.coeffs[k].imag();
  return a.grid.L() * a.grid.L() * acc;
}

SpectralField resample(const SpectralField& F, const GridSpec& target) {
  if (target.L() != F.grid.L()) throw InvalidArgument("resample needs the same box size");
  const GridSpec& src = F.grid;
  SpectralField out(target);
  const int keep = std::min(src.n(), target.n()) / 2;  // |k| < keep on both axes
  for (int i = 0; i < src.n(); ++i) {
    const int k1 = src.wavenumber(i);
    if (std::abs(k1) >= keep) continue;
    for (int j = 0; j < src.n(); ++j) {
      const int k2 = src.wavenumber(j);
      if (std::abs(k2) >= keep) continue;
      out.at_wavenumber(k1, k2) = F(i, j);
    }
  }
  return out;
}

}  // namespace snlw

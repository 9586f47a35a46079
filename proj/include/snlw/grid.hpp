#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace snlw {

using Complex = std::complex<double>;

/// Uniform periodic grid on the box [-L/2, L/2)^2 with n points per side.
///
/// Lattice index i in [0, n) maps to the wavenumber k = i for i < n/2 and
/// k = i - n otherwise, so k ranges over {-n/2, ..., n/2 - 1} and the
/// frequency is xi = 2*pi*k / L.
class GridSpec {
 public:
  GridSpec(double side_length, int points_per_side);

  double L() const { return side_length_; }
  int n() const { return n_; }
  double dx() const { return side_length_ / n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

  int wavenumber(int index) const { return index < n_ / 2 ? index : index - n_; }
  int index_of(int wavenumber) const { return wavenumber >= 0 ? wavenumber : wavenumber + n_; }
  double frequency(int index) const;
  double xi_abs(int i, int j) const;
  /// True for the row/column k = -n/2, which has no distinct mirror partner.
  bool is_nyquist(int i, int j) const { return i == n_ / 2 || j == n_ / 2; }
  /// Largest |xi| along an axis: pi*n/L.
  double nyquist_frequency() const;

  /// Physical coordinate of sample index i, box centred at the origin.
  double coordinate(int index) const { return -0.5 * side_length_ + index * dx(); }

  std::size_t flat(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  double side_length_;
  int n_;
};

/// Samples of a real function on the grid, row-major (i indexes x1).
struct RealField {
  GridSpec grid;
  std::vector<double> values;

  explicit RealField(const GridSpec& g) : grid(g), values(g.size(), 0.0) {}
  RealField(const GridSpec& g, std::vector<double> v);

  /// Samples f(x1, x2) at the centred physical coordinates.
  static RealField sample(const GridSpec& g, const std::function<double(double, double)>& f);

  double& operator()(int i, int j) { return values[grid.flat(i, j)]; }
  double operator()(int i, int j) const { return values[grid.flat(i, j)]; }

  RealField& operator+=(const RealField& o);
  RealField& operator-=(const RealField& o);
  RealField& operator*=(double a);
  bool all_finite() const;
};

RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
RealField operator*(double a, RealField f);
/// Pointwise product.
RealField hadamard(const RealField& a, const RealField& b);

/// Fourier coefficients on the full n x n lattice.
///
/// Normalization: coeff(k) = n^{-2} sum_x f(x) exp(-2 pi i k.j/n), so that
/// f(x_j) = sum_k coeff(k) exp(2 pi i k.j/n) (phases relative to index 0) and
/// sum_k |coeff|^2 = n^{-2} sum_x f^2. The L^2 norm on the box is therefore
/// L * (sum_k |coeff|^2)^{1/2}.
struct SpectralField {
  GridSpec grid;
  std::vector<Complex> coeffs;

  explicit SpectralField(const GridSpec& g) : grid(g), coeffs(g.size(), Complex{}) {}

  Complex& operator()(int i, int j) { return coeffs[grid.flat(i, j)]; }
  const Complex& operator()(int i, int j) const { return coeffs[grid.flat(i, j)]; }
  /// Access by signed wavenumber pair.
  Complex& at_wavenumber(int k1, int k2) { return (*this)(grid.index_of(k1), grid.index_of(k2)); }
  const Complex& at_wavenumber(int k1, int k2) const {
    return (*this)(grid.index_of(k1), grid.index_of(k2));
  }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

SpectralField to_spectral(const RealField& f);
/// Requires Hermitian symmetry within 1e-10 of the largest coefficient;
/// throws InvalidArgument otherwise or on non-finite coefficients.
RealField to_physical(const SpectralField& F);

/// Largest |coeff(k) - conj(coeff(-k))| over the lattice.
double hermitian_defect(const SpectralField& F);
/// Replaces each coefficient pair by its Hermitian average.
SpectralField symmetrize(const SpectralField& F);

/// coeff(k) -> m(xi1, xi2) * coeff(k). Throws on non-finite multiplier values.
SpectralField apply_fourier_multiplier(const SpectralField& F,
                                       const std::function<double(double, double)>& m);
/// Radial variant: m evaluated at |xi|.
SpectralField apply_radial_multiplier(const SpectralField& F, const std::function<double(double)>& m);
/// Table variant; `table` is indexed like the coefficients.
SpectralField apply_multiplier_table(const SpectralField& F, std::span<const double> table);
/// Evaluates a radial multiplier on every lattice point.
std::vector<double> radial_table(const GridSpec& g, const std::function<double(double)>& m);

/// Spectral truncation to the closed ball |xi| <= radius (the chi_N projector).
SpectralField truncate_ball(const SpectralField& F, double radius);
/// Zeroes every coefficient with max(|k1|, |k2|) > n/3.
SpectralField dealias_cubic(const SpectralField& F);
/// True when max(|k1|,|k2|) <= n/3, the band kept by dealias_cubic.
bool in_dealiased_band(const GridSpec& g, int i, int j);

/// Japanese bracket <xi> = (1 + |xi|^2)^{1/2}.
inline double bracket(double xi_abs) { return std::sqrt(1.0 + xi_abs * xi_abs); }

/// (sum_k <xi>^{2 sigma} |coeff|^2)^{1/2}, scaled so sigma = 0 is the L^2 norm.
double norm_hs(const SpectralField& F, double sigma);
double norm_hs(const RealField& f, double sigma);
/// Quadrature norm (sum |f|^p dx^2)^{1/p}; p = infinity gives the max norm.
double lp_norm(const RealField& f, double p);
/// Bessel multiplier <xi>^sigma applied spectrally, then lp_norm.
double norm_w_sigma_p(const RealField& f, double sigma, double p);

/// Integral of a*b over the box for real fields given by their coefficients.
double l2_inner(const SpectralField& a, const SpectralField& b);

/// Coefficients copied onto a finer (or coarser) lattice of `target`.
/// The Nyquist row/column of the source is dropped, so the result is the
/// band-limited function with the symmetric part of the spectrum.
SpectralField resample(const SpectralField& F, const GridSpec& target);
/// Grid with the same box and `factor` times more points per side.
GridSpec refined(const GridSpec& g, int factor);

/// Evaluates products of band-limited fields on a `factor`-times refined grid.
/// Factor 2 makes cubic products exact once projected back to the coarse
/// lattice; factor k keeps a k-fold product exact on the fine lattice itself.
class ProductGrid {
 public:
  ProductGrid(const GridSpec& coarse, int factor) : coarse_(coarse), fine_(refined(coarse, factor)) {}

  const GridSpec& coarse() const { return coarse_; }
  const GridSpec& fine() const { return fine_; }

  RealField lift(const SpectralField& F) const { return to_physical(resample(F, fine_)); }
  SpectralField project(const RealField& fine_values) const {
    return resample(to_spectral(fine_values), coarse_);
  }

 private:
  GridSpec coarse_;
  GridSpec fine_;
};

}  // namespace snlw

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "snlw/errors.hpp"
#include "snlw/grid.hpp"

using namespace snlw;

namespace {

constexpr double kPi = std::numbers::pi;

RealField random_field(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  RealField f(g);
  for (auto& x : f.values) x = normal(rng);
  return f;
}

// Direct O(n^4) DFT with the documented normalization.
SpectralField naive_dft(const RealField& f) {
  const GridSpec& g = f.grid;
  const int n = g.n();
  SpectralField F(g);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      std::complex<double> acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          acc += f(i, j) * std::polar(1.0, -2.0 * kPi * (static_cast<double>(p) * i + static_cast<double>(q) * j) / n);
      F(p, q) = acc / static_cast<double>(n * n);
    }
  return F;
}

// Trigonometric interpolant of F at an arbitrary point, phases relative to x_0 = -L/2.
double interpolate(const SpectralField& F, double x, double y) {
  const GridSpec& g = F.grid;
  double acc = 0.0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      const double phase = g.frequency(i) * (x + 0.5 * g.L()) + g.frequency(j) * (y + 0.5 * g.L());
      acc += (F(i, j) * std::polar(1.0, phase)).real();
    }
  return acc;
}

double max_abs_diff(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) m = std::max(m, std::abs(a.values[k] - b.values[k]));
  return m;
}

}  // namespace

TEST_CASE("grid geometry") {
  const GridSpec g(8.0, 16);
  CHECK(g.dx() == doctest::Approx(0.5));
  CHECK(g.wavenumber(7) == 7);
  CHECK(g.wavenumber(8) == -8);
  CHECK(g.wavenumber(15) == -1);
  CHECK(g.index_of(-1) == 15);
  CHECK(g.frequency(1) == doctest::Approx(2.0 * kPi / 8.0));
  CHECK(g.nyquist_frequency() == doctest::Approx(kPi * 16 / 8.0));
  CHECK(g.coordinate(0) == doctest::Approx(-4.0));
  CHECK(g.is_nyquist(8, 3));
  CHECK_FALSE(g.is_nyquist(7, 3));
  CHECK_THROWS_AS(GridSpec(0.0, 8), InvalidArgument);
  CHECK_THROWS_AS(GridSpec(1.0, 2), InvalidArgument);
  CHECK_THROWS_AS(GridSpec(1.0, 7), InvalidArgument);
}

TEST_CASE("to_spectral agrees with a direct DFT") {
  const GridSpec g(3.0, 8);
  const RealField f = random_field(g, 1);
  const SpectralField fast = to_spectral(f);
  const SpectralField slow = naive_dft(f);
  double worst = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) worst = std::max(worst, std::abs(fast.coeffs[k] - slow.coeffs[k]));
  CHECK(worst < 1e-14);
}

TEST_CASE("transform edge cases") {
  const GridSpec g(2.0 * kPi, 8);
  SUBCASE("zero and constant fields") {
    const SpectralField Z = to_spectral(RealField(g));
    for (const auto& c : Z.coeffs) CHECK(std::abs(c) == 0.0);
    RealField c(g);
    for (auto& x : c.values) x = 2.5;
    const SpectralField C = to_spectral(c);
    CHECK(C(0, 0).real() == doctest::Approx(2.5));
    for (std::size_t k = 1; k < g.size(); ++k) CHECK(std::abs(C.coeffs[k]) < 1e-15);
  }
  SUBCASE("one cosine mode gives two equal coefficients") {
    const RealField f = RealField::sample(g, [](double x, double) { return std::cos(x); });
    const SpectralField F = to_spectral(f);
    int nonzero = 0;
    for (std::size_t k = 0; k < g.size(); ++k) nonzero += std::abs(F.coeffs[k]) > 1e-12 ? 1 : 0;
    CHECK(nonzero == 2);
    CHECK(std::abs(F.at_wavenumber(1, 0)) == doctest::Approx(0.5));
    CHECK(std::abs(F.at_wavenumber(-1, 0)) == doctest::Approx(0.5));
  }
  SUBCASE("unit coefficient pair is a cosine of amplitude 2") {
    SpectralField F(g);
    F.at_wavenumber(1, 0) = 1.0;
    F.at_wavenumber(-1, 0) = 1.0;
    const RealField f = to_physical(F);
    for (int i = 0; i < g.n(); ++i) CHECK(f(i, 3) == doctest::Approx(2.0 * std::cos(2.0 * kPi * i / g.n())));
  }
  SUBCASE("round trip") {
    const RealField f = random_field(g, 2);
    CHECK(max_abs_diff(to_physical(to_spectral(f)), f) < 1e-12);
  }
  SUBCASE("non-Hermitian or non-finite coefficients are rejected") {
    SpectralField F(g);
    F.at_wavenumber(1, 2) = 1.0;
    CHECK_THROWS_AS(to_physical(F), InvalidArgument);
    CHECK(hermitian_defect(F) == doctest::Approx(1.0));
    CHECK(hermitian_defect(symmetrize(F)) < 1e-15);
    SpectralField G(g);
    G(0, 0) = std::nan("");
    CHECK_THROWS_AS(to_physical(G), InvalidArgument);
  }
}

TEST_CASE("Parseval, norms and inner products") {
  const GridSpec g(5.0, 16);
  const RealField f = random_field(g, 3);
  const RealField h = random_field(g, 4);
  double quad = 0.0, cross = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    quad += f.values[k] * f.values[k] * g.dx() * g.dx();
    cross += f.values[k] * h.values[k] * g.dx() * g.dx();
  }
  CHECK(norm_hs(f, 0.0) == doctest::Approx(std::sqrt(quad)).epsilon(1e-12));
  CHECK(lp_norm(f, 2.0) == doctest::Approx(std::sqrt(quad)).epsilon(1e-12));
  CHECK(l2_inner(to_spectral(f), to_spectral(h)) == doctest::Approx(cross).epsilon(1e-12));
  CHECK(norm_hs(RealField(g), 1.0) == 0.0);

  SUBCASE("single mode |xi| = 1 with unit L2 mass has H^1 norm sqrt 2") {
    const GridSpec u(2.0 * kPi, 16);
    const RealField c = RealField::sample(u, [](double x, double) { return std::cos(x) / std::sqrt(2.0 * kPi * kPi); });
    CHECK(lp_norm(c, 2.0) == doctest::Approx(1.0));
    CHECK(norm_hs(c, 1.0) == doctest::Approx(std::sqrt(2.0)));
  }
  SUBCASE("W^{sigma,p} of a constant is |c| L^{2/p}") {
    RealField c(g);
    for (auto& x : c.values) x = -1.5;
    for (double p : {1.0, 2.0, 4.0}) CHECK(norm_w_sigma_p(c, -0.3, p) == doctest::Approx(1.5 * std::pow(5.0, 2.0 / p)));
    CHECK(lp_norm(c, INFINITY) == doctest::Approx(1.5));
  }
  SUBCASE("monotone in sigma for p = 2") {
    double last = 0.0;
    for (double s : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      const double v = norm_w_sigma_p(f, s, 2.0);
      CHECK(v >= last);
      last = v;
    }
  }
  CHECK_THROWS_AS(norm_w_sigma_p(f, 0.0, 0.5), InvalidArgument);
}

TEST_CASE("Bessel potential matches a dense kernel on 8x8") {
  const GridSpec g(4.0, 8);
  const int n = g.n();
  const RealField f = random_field(g, 5);
  // Dense operator K = F^{-1} diag(<xi>^sigma) F built entry by entry.
  const double sigma = -0.1;
  RealField Bf(g);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          std::complex<double> kernel = 0.0;
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
              const double xi = std::hypot(2.0 * kPi * g.wavenumber(p) / g.L(), 2.0 * kPi * g.wavenumber(q) / g.L());
              const double w = std::pow(1.0 + xi * xi, sigma / 2.0);
              kernel += w * std::polar(1.0, 2.0 * kPi * (static_cast<double>(p) * (a - i) + static_cast<double>(q) * (b - j)) / n);
            }
          acc += (kernel.real() / (n * n)) * f(i, j);
        }
      Bf(a, b) = acc;
    }
  double brute = 0.0;
  for (double x : Bf.values) brute += std::pow(std::abs(x), 4.0) * g.dx() * g.dx();
  brute = std::pow(brute, 0.25);
  CHECK(norm_w_sigma_p(f, sigma, 4.0) == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("Fourier multipliers") {
  const GridSpec g(2.0 * kPi, 16);
  const SpectralField F = to_spectral(random_field(g, 6));
  const SpectralField G = to_spectral(random_field(g, 7));
  auto bessel = [](double e) { return [e](double r) { return std::pow(1.0 + r * r, e / 2.0); }; };

  SUBCASE("identity and composition") {
    const SpectralField one = apply_radial_multiplier(F, [](double) { return 1.0; });
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(one.coeffs[k] == F.coeffs[k]);
    const SpectralField twice = apply_radial_multiplier(apply_radial_multiplier(F, bessel(-0.2)), bessel(-0.2));
    const SpectralField once = apply_radial_multiplier(F, bessel(-0.4));
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(twice.coeffs[k] - once.coeffs[k]) < 1e-15);
  }
  SUBCASE("indicator of the ball is the truncation") {
    const SpectralField a = apply_radial_multiplier(F, [](double r) { return r <= 3.0 ? 1.0 : 0.0; });
    const SpectralField b = truncate_ball(F, 3.0);
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(a.coeffs[k] == b.coeffs[k]);
  }
  SUBCASE("linearity and Hermitian symmetry") {
    const auto m = [](double x, double y) { return 1.0 / (1.0 + x * x + 2.0 * y * y); };
    const SpectralField lhs = apply_fourier_multiplier(2.0 * F + (-3.0) * G, m);
    const SpectralField rhs = 2.0 * apply_fourier_multiplier(F, m) + (-3.0) * apply_fourier_multiplier(G, m);
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(lhs.coeffs[k] - rhs.coeffs[k]) < 1e-12);
    CHECK(hermitian_defect(lhs) < 1e-15);
  }
  SUBCASE("table variant and non-finite values") {
    const auto table = radial_table(g, bessel(0.5));
    const SpectralField a = apply_multiplier_table(F, table);
    const SpectralField b = apply_radial_multiplier(F, bessel(0.5));
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(a.coeffs[k] == b.coeffs[k]);
    CHECK_THROWS_AS(apply_radial_multiplier(F, [](double r) { return 1.0 / r; }), InvalidArgument);
  }
}

TEST_CASE("dealiasing") {
  const GridSpec g(2.0 * kPi, 12);
  SpectralField low(g), high(g);
  low.at_wavenumber(4, -3) = {1.0, 2.0};
  low.at_wavenumber(-4, 3) = {1.0, -2.0};
  high.at_wavenumber(5, 0) = 1.0;
  high.at_wavenumber(-5, 0) = 1.0;
  const SpectralField a = dealias_cubic(low);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(a.coeffs[k] == low.coeffs[k]);
  for (const auto& c : dealias_cubic(high).coeffs) CHECK(std::abs(c) == 0.0);
  CHECK(in_dealiased_band(g, g.index_of(4), g.index_of(-4)));
  CHECK_FALSE(in_dealiased_band(g, g.index_of(5), 0));

  SUBCASE("cubic of a two-mode field matches a 3x fine-grid evaluation") {
    const GridSpec c(2.0 * kPi, 16);
    const RealField v = RealField::sample(c, [](double x, double y) { return std::cos(2.0 * x) + 0.5 * std::sin(x + 3.0 * y); });
    const SpectralField V = to_spectral(v);
    // Product on the 2x grid (the library path), then the 2/3 mask.
    const ProductGrid pg(c, 2);
    RealField w = pg.lift(V);
    for (auto& x : w.values) x = x * x * x;
    const SpectralField cubed = dealias_cubic(pg.project(w));
    // Oracle: sample the exact cube on a 3x grid by direct trigonometric sums.
    const GridSpec fine = refined(c, 3);
    RealField exact(fine);
    for (int i = 0; i < fine.n(); ++i)
      for (int j = 0; j < fine.n(); ++j) {
        const double u = interpolate(V, fine.coordinate(i), fine.coordinate(j));
        exact(i, j) = u * u * u;
      }
    const SpectralField oracle = dealias_cubic(resample(to_spectral(exact), c));
    double worst = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) worst = std::max(worst, std::abs(cubed.coeffs[k] - oracle.coeffs[k]));
    CHECK(worst < 1e-13);
  }
}

TEST_CASE("resample keeps the band-limited function") {
  const GridSpec c(3.0, 8);
  const RealField f = random_field(c, 8);
  const SpectralField F = to_spectral(f);
  const SpectralField up = resample(F, refined(c, 2));
  const RealField fine = to_physical(up);
  // Fine samples equal the Nyquist-free interpolant of F.
  SpectralField trimmed = F;
  for (int i = 0; i < c.n(); ++i)
    for (int j = 0; j < c.n(); ++j)
      if (c.is_nyquist(i, j)) trimmed(i, j) = 0.0;
  for (int i = 0; i < fine.grid.n(); i += 3)
    for (int j = 0; j < fine.grid.n(); j += 5)
      CHECK(fine(i, j) == doctest::Approx(interpolate(trimmed, fine.grid.coordinate(i), fine.grid.coordinate(j))));
  const SpectralField back = resample(up, c);
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(std::abs(back.coeffs[k] - trimmed.coeffs[k]) < 1e-15);
}

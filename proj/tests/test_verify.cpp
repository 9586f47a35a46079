#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>

#include "snlw/errors.hpp"
#include "snlw/verify.hpp"

using namespace snlw;

TEST_CASE("log-log regression") {
  std::vector<std::pair<double, double>> exact;
  for (double x : {2.0, 4.0, 8.0, 16.0}) exact.emplace_back(x, 3.0 * std::pow(x, -1.5));
  const auto fit = loglog_fit(exact);
  CHECK(fit.slope == doctest::Approx(-1.5).epsilon(1e-13));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-13));
  CHECK(fit.stderr_slope < 1e-12);

  // Worked by hand with X = log x, Y = log y: X = (0, 1, 2) ln 2 after shifting.
  const double l2 = std::log(2.0);
  const std::vector<std::pair<double, double>> noisy{{1.0, 1.0}, {2.0, std::exp(1.0)}, {4.0, std::exp(1.5)}};
  // Y = (0, 1, 1.5), X = (0, l2, 2 l2): Sxx = 2 l2^2, Sxy = 1.5 l2, slope = 0.75 / l2.
  const auto f2 = loglog_fit(noisy);
  CHECK(f2.slope == doctest::Approx(0.75 / l2).epsilon(1e-12));
  // residuals (-1/12, 1/6, -1/12): SSE = 1/24, one dof.
  CHECK(f2.stderr_slope == doctest::Approx(std::sqrt((1.0 / 24.0) / (2 * l2 * l2))).epsilon(1e-12));

  CHECK_THROWS_AS(loglog_fit({{1.0, 1.0}, {2.0, 2.0}}), InvalidArgument);
  CHECK_THROWS_AS(loglog_fit({{1.0, 1.0}, {2.0, -2.0}, {3.0, 1.0}}), InvalidArgument);
}

TEST_CASE("mean estimate") {
  const auto m = mean_estimate({1.0, 2.0, 3.0, 4.0});
  CHECK(m.mean == doctest::Approx(2.5));
  CHECK(m.stderr_mean == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(m.count == 4);
}

TEST_CASE("reports and seeds") {
  CHECK(TestReport::make("a", 1.0, 0.0, 1.0, 3).pass);
  CHECK_FALSE(TestReport::make("a", 1.0 + 1e-12, 0.0, 1.0, 3).pass);
  CHECK_FALSE(TestReport::make("a", std::nan(""), 0.0, 1.0, 3).pass);
  CHECK(TestReport::make("a", 1e300, 0.0, INFINITY, 3).pass);
  auto r = TestReport::make("a", 0.5, 0.0, 1.0, 3);
  r.note("k", 2.0).note("j", "x");
  CHECK(r.metadata.size() == 2);
  CHECK(seed_range(5, 3) == std::vector<std::uint64_t>{5, 6, 7});
}

TEST_CASE("parallel_for covers every index once regardless of jobs") {
  for (int jobs : {1, 3, 8}) {
    std::vector<int> hits(101, 0);
    std::atomic<int> calls{0};
    parallel_for(101, jobs, [&](int i) {
      hits[i] += 1;
      ++calls;
    });
    CHECK(calls == 101);
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
}

TEST_CASE("random H^s fields are real and normalized") {
  const GridSpec g(2 * std::numbers::pi, 32);
  const RealField f = random_hs_field(g, 0.9, 4);
  CHECK(norm_hs(f, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hermitian_defect(to_spectral(f)) < 1e-14);
  CHECK(random_hs_field(g, 0.9, 4).values == f.values);
  CHECK(random_hs_field(g, 0.9, 5).values != f.values);
}

TEST_CASE("identical cutoffs propagate identically") {
  PropagationSetup setup;
  setup.noise.grid = GridSpec(24.0, 64);
  setup.noise.cutoff_N = 2.0;
  setup.noise.amplitude = 0.1;
  setup.initial = WaveState::zero(setup.noise.grid);
  setup.dt = 0.125;
  const RealField rho = radial_cutoff(setup.noise.grid, 2.0);
  const auto r = propagation_test(rho, rho, 0.5, 2.0, 3, setup);
  CHECK(r.statistic == 0.0);
  CHECK(r.pass);
}

TEST_CASE("conservation control on a smooth bump") {
  const GridSpec g(16.0, 64);
  const RealField v = RealField::sample(g, [](double x, double y) { return 0.5 * std::exp(-(x * x + y * y)); });
  const auto r = conservation_test(WaveState{v, RealField(g), 0.0}, g.dx() / 4, 0.5, 1e-3);
  CHECK(r.pass);
  CHECK(r.statistic >= 0.0);
}

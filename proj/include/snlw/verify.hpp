#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "snlw/imethod.hpp"
#include "snlw/noise.hpp"
#include "snlw/regression.hpp"
#include "snlw/solver.hpp"

namespace snlw {

/// Outcome of one check. pass <=> band_low <= statistic <= band_high.
struct TestReport {
  std::string name;
  double statistic = 0.0;
  double band_low = 0.0;
  double band_high = 0.0;
  std::int64_t samples = 0;
  bool pass = false;
  std::vector<std::pair<std::string, std::string>> metadata;

  static TestReport make(std::string name, double statistic, double band_low, double band_high,
                         std::int64_t samples);
  TestReport& note(const std::string& key, const std::string& value);
  TestReport& note(const std::string& key, double value);
};

/// Seeds first, first+1, ..., first+count-1.
std::vector<std::uint64_t> seed_range(std::uint64_t first, int count);

/// Runs f(0..count-1) on `jobs` threads. Callers write results by index, so
/// the outcome does not depend on the thread count.
void parallel_for(int count, int jobs, const std::function<void(int)>& f);

/// Common setup for the Monte Carlo noise suites.
struct NoiseTestSetup {
  GridSpec grid{6.283185307179586, 64};  // side 2 pi: xi runs over the integers
  double R = 1.0;                        // cutoff radius of rho
  double amplitude = 1.0;
  double T = 1.0;
  int time_nodes = 4;       // nodes T/K, 2T/K, ..., T with trapezoid weights
  double sigma_scale = 1.0; // counterterm multiplier; 1.1 is the +10% fault
  double z_band = 3.0;      // confidence multiplier for mean tests
  int jobs = 1;
};

/// Uniform-in-N moment bound for rho :psi_N^l: in L^p_T W^{-eps,p}.
/// uniformity: E||.||^p at 2N over the same at N, band [1/2, 2].
/// centering: |mean| / stderr of the time-averaged integral of rho :psi_{2N}^l:, band [0, z_band].
struct MomentTestResult {
  TestReport uniformity;
  TestReport centering;
  bool pass() const { return uniformity.pass && centering.pass; }
};
MomentTestResult moment_bound_test(int l, double eps, double p, double N, const std::vector<std::uint64_t>& seeds,
                                   const NoiseTestSetup& setup);

enum class Coupling {
  Coupled,    // psi_N is the truncation of psi_M: one noise stream
  Decoupled,  // psi_N and psi_M driven by unrelated streams (negative control)
};

/// (E ||rho(:psi_{2N}^l: - :psi_N^l:)||^2_{L^2_t H^{-eps}})^{1/2} for each N,
/// with products formed on a grid fine enough to be alias-free.
/// Passes if the fitted slope is <= -0.05 with stderr <= 0.1.
struct CauchyTestResult {
  RegressionFit fit;
  TestReport report;
  std::vector<double> statistic;  // one per N
};
CauchyTestResult cauchy_rate_test(int l, double eps, const std::vector<double>& N_list,
                                  const std::vector<std::uint64_t>& seeds, const NoiseTestSetup& setup,
                                  Coupling coupling = Coupling::Coupled);

/// E ||rho(:psi_N^l:(t0+h) - :psi_N^l:(t0))||^2_{H^{-eps}} for each h, fitted against h.
struct ContinuityTestResult {
  RegressionFit fit;
  std::vector<double> statistic;  // one per h
};
ContinuityTestResult time_continuity_test(int l, double eps, double N, double t0, const std::vector<double>& h_list,
                                          const std::vector<std::uint64_t>& seeds, const NoiseTestSetup& setup);

/// E ||I_N(rho psi)||^p_{L^p_{t,x}} / (p^{p/2} log^{p/2} N) over N_list, with psi
/// resolved up to the grid Nyquist frequency. The report statistic is the
/// largest growth factor normalized[j] / normalized[i], i < j, band [0, 2].
struct LpGrowthResult {
  TestReport report;
  std::vector<double> normalized;
  std::vector<double> analytic;  // exact expectation for p = 2, else empty
  double spread = 0.0;           // max / min of normalized
};
LpGrowthResult lp_growth_test(double p, const std::vector<double>& N_list, const std::vector<std::uint64_t>& seeds,
                              double s, const NoiseTestSetup& setup, bool identity_multiplier = false);

/// Exact E ||I_N(rho psi)||^2_{L^2_{t,x}} for the discrete model, time
/// integral by the same trapezoid nodes as lp_growth_test.
double expected_l2_growth(double N, double s, const NoiseTestSetup& setup, bool identity_multiplier = false);

/// Inputs for the finite-speed comparison.
struct PropagationSetup {
  NoiseConfig noise;  // seed is overridden per call
  double dt = 0.05;
  int picard_iters = 20;
  double picard_tol = 1e-6;
  double s = 0.9;
  double blowup_threshold = 1e6;
  /// Initial data before localization; each run starts from (rho_i u0, rho_i u1).
  WaveState initial = WaveState::zero(GridSpec(24.0, 128));
};

/// Runs the localized equation with cutoffs rho1 and rho2 on one noise path;
/// statistic = sup_{t <= T} max_{|x| < R - t} |v1 - v2|, band [0, 10 picard_tol].
TestReport propagation_test(const RealField& rho1, const RealField& rho2, double T, double R, std::uint64_t seed,
                            const PropagationSetup& setup);

/// Random field with coefficients proportional to <xi>^{-s-1} times complex
/// Gaussians (Hermitian), normalized to unit L^2 norm.
RealField random_hs_field(const GridSpec& g, double s, std::uint64_t seed);

/// Commutator decay for one (s, k): defect / ||Iv||_{H^1}^k (k = 1..3), or the
/// mixed defect I(v^k g) - (Iv)^k I(g) with g a frozen
/// :psi^{3-k}: sample (mixed = true, k = 1..2), averaged over seeds.
struct CommutatorFit {
  double s = 0.0;
  int k = 0;
  bool mixed = false;
  RegressionFit fit;
  std::vector<double> statistic;  // one per N
  double bound = 0.0;             // slope must be <= bound
  bool exactly_zero = false;      // k = 1 plain defect
  bool pass = false;
};
std::vector<CommutatorFit> commutator_slope_suite(const std::vector<double>& s_list, const std::vector<int>& k_list,
                                                  const std::vector<double>& N_list,
                                                  const std::vector<std::uint64_t>& seeds, const GridSpec& grid,
                                                  bool mixed = false);

/// Centered difference of E(I_N v, I_N v_t) along a run with a frozen noise
/// bundle, compared with the four-term derivative. Statistic:
/// max |FD - sum| / max |sum| over interior steps, band [0, tolerance].
struct EnergyAuditSetup {
  WaveState initial = WaveState::zero(GridSpec(16.0, 64));
  WickBundle bundle = WickBundle::zero(GridSpec(16.0, 64));
  RealField rho = RealField(GridSpec(16.0, 64));
  MultiplierSpec spec;
  double dt = 0.03125;
  double duration = 0.5;
  double tolerance = 1e-2;
};
TestReport energy_audit(const EnergyAuditSetup& setup);

/// Relative drift max_t |H(t) - H(0)| / H(0) per unit time of the Hamiltonian
/// of the noise-free cubic equation, band [0, tolerance].
TestReport conservation_test(const WaveState& initial, double dt, double T, double tolerance);

}  // namespace snlw

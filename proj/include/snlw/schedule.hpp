#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace snlw {

/// Parameters of the growing-N schedule. A schedule exists only inside the
/// window 2(1-s) < beta < alpha < 1 - 3(1-s), which is empty unless s > 4/5.
/// "A << B" is read as A <= margin * B.
struct ScheduleParams {
  double s = 0.9;
  double alpha = 0.6;
  double beta = 0.3;
  double margin = 0.5;

  /// Throws InfeasibleSchedule if the window is empty or (alpha, beta) lie
  /// outside it, InvalidArgument for margin outside (0, 1].
  void validate() const;
  /// beta and alpha at one and two thirds of the window for this s.
  static ScheduleParams centered(double s, double margin = 0.5);
};

/// A cutoff N = 2^exponent. Exponents can far exceed the double range.
struct PowerOfTwo {
  std::int64_t exponent = 0;

  /// 2^min(exponent, 1000); large enough to act as "no smoothing" on any grid.
  double value() const;
  friend bool operator==(const PowerOfTwo&, const PowerOfTwo&) = default;
};

/// log2(2^a + 2^b), stable for large or infinite arguments.
double log2_sum(double a, double b);

/// Smallest N = 2^j, j >= 0, with N^{2(1-s)} (u0^2 + u1^2) + u0^4 <= margin N^beta.
PowerOfTwo initial_N(double u0_norm, double u1_norm, const ScheduleParams& p);
/// Smallest N' = 2^j' > N_k with N'^{2(1-s)} N_k^alpha + N_k^{2 alpha} <= margin N'^beta.
PowerOfTwo next_N(PowerOfTwo N_k, const ScheduleParams& p);

/// log2 of both sides of the next_N inequality, for re-verification.
struct ScheduleCheck {
  double lhs_log2 = 0.0;
  double rhs_log2 = 0.0;
  bool holds() const { return lhs_log2 <= rhs_log2; }
};
ScheduleCheck check_step(PowerOfTwo N_k, PowerOfTwo N_next, const ScheduleParams& p);
ScheduleCheck check_initial(double u0_norm, double u1_norm, PowerOfTwo N1, const ScheduleParams& p);

/// N_1, N_2, ... for `windows` windows.
std::vector<PowerOfTwo> schedule_ladder(double u0_norm, double u1_norm, const ScheduleParams& p, int windows);

}  // namespace snlw

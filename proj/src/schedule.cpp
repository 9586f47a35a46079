#include "snlw/schedule.hpp"

#include <cmath>
#include <limits>

#include "snlw/errors.hpp"

namespace snlw {

namespace {

constexpr std::int64_t kMaxExponent = std::int64_t{1} << 52;

// Smallest j in [lo, inf) with gap(j) <= 0, for gap strictly decreasing in j.
template <class Gap>
std::int64_t first_satisfying(std::int64_t lo, Gap gap) {
  if (gap(lo) <= 0.0) return lo;
  std::int64_t step = 1;
  std::int64_t hi = lo + step;
  while (gap(hi) > 0.0) {
    lo = hi;
    step *= 2;
    if (step > kMaxExponent) throw InfeasibleSchedule("schedule exponent overflow: no admissible N found");
    hi = lo + step;
  }
  // gap(lo) > 0 >= gap(hi)
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (gap(mid) > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

void ScheduleParams::validate() const {
  if (!(margin > 0.0 && margin <= 1.0)) throw InvalidArgument("schedule margin must lie in (0, 1]");
  if (!(s < 1.0)) throw InfeasibleSchedule("schedule needs s < 1");
  if (!(s > 0.8))
    throw InfeasibleSchedule("no schedule for s <= 4/5: the window 2(1-s) < beta < alpha < 1-3(1-s) is empty");
  const double lo = 2.0 * (1.0 - s);
  const double hi = 1.0 - 3.0 * (1.0 - s);
  if (!(lo < beta && beta < alpha && alpha < hi))
    throw InfeasibleSchedule("need 2(1-s) < beta < alpha < 1-3(1-s); here the window is (" + std::to_string(lo) +
                             ", " + std::to_string(hi) + ") with beta=" + std::to_string(beta) +
                             ", alpha=" + std::to_string(alpha));
}

ScheduleParams ScheduleParams::centered(double s, double margin) {
  const double lo = 2.0 * (1.0 - s);
  const double hi = 1.0 - 3.0 * (1.0 - s);
  ScheduleParams p{s, lo + 2.0 * (hi - lo) / 3.0, lo + (hi - lo) / 3.0, margin};
  return p;
}

double PowerOfTwo::value() const { return std::ldexp(1.0, static_cast<int>(std::min<std::int64_t>(exponent, 1000))); }

double log2_sum(double a, double b) {
  if (a < b) std::swap(a, b);
  if (a == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log2(1.0 + std::exp2(b - a));
}

ScheduleCheck check_initial(double u0_norm, double u1_norm, PowerOfTwo N1, const ScheduleParams& p) {
  const double j = static_cast<double>(N1.exponent);
  const double data = std::log2(u0_norm * u0_norm + u1_norm * u1_norm);
  return {log2_sum(2.0 * (1.0 - p.s) * j + data, 4.0 * std::log2(u0_norm)), std::log2(p.margin) + p.beta * j};
}

ScheduleCheck check_step(PowerOfTwo N_k, PowerOfTwo N_next, const ScheduleParams& p) {
  const double j = static_cast<double>(N_k.exponent);
  const double jn = static_cast<double>(N_next.exponent);
  return {log2_sum(2.0 * (1.0 - p.s) * jn + p.alpha * j, 2.0 * p.alpha * j), std::log2(p.margin) + p.beta * jn};
}

PowerOfTwo initial_N(double u0_norm, double u1_norm, const ScheduleParams& p) {
  p.validate();
  if (!(u0_norm >= 0.0 && u1_norm >= 0.0) || !std::isfinite(u0_norm) || !std::isfinite(u1_norm))
    throw InvalidArgument("initial_N needs finite non-negative norms");
  auto gap = [&](std::int64_t j) {
    const auto c = check_initial(u0_norm, u1_norm, PowerOfTwo{j}, p);
    return c.lhs_log2 - c.rhs_log2;
  };
  return PowerOfTwo{first_satisfying(0, gap)};
}

PowerOfTwo next_N(PowerOfTwo N_k, const ScheduleParams& p) {
  p.validate();
  if (N_k.exponent < 0) throw InvalidArgument("next_N needs N_k >= 1");
  if (N_k.exponent >= kMaxExponent) throw InfeasibleSchedule("schedule exponent overflow");
  auto gap = [&](std::int64_t j) {
    const auto c = check_step(N_k, PowerOfTwo{j}, p);
    return c.lhs_log2 - c.rhs_log2;
  };
  return PowerOfTwo{first_satisfying(N_k.exponent + 1, gap)};
}

std::vector<PowerOfTwo> schedule_ladder(double u0_norm, double u1_norm, const ScheduleParams& p, int windows) {
  if (windows < 1) throw InvalidArgument("schedule ladder needs at least one window");
  std::vector<PowerOfTwo> out{initial_N(u0_norm, u1_norm, p)};
  while (static_cast<int>(out.size()) < windows) out.push_back(next_N(out.back(), p));
  return out;
}

}  // namespace snlw

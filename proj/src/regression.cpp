#include "snlw/regression.hpp"

#include <cmath>

#include "snlw/errors.hpp"

namespace snlw {

RegressionFit loglog_fit(const std::vector<std::pair<double, double>>& xy) {
  if (xy.size() < 3) throw InvalidArgument("log-log fit needs at least three points");
  RegressionFit fit;
  for (const auto& [x, y] : xy) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
      throw InvalidArgument("log-log fit needs finite positive data");
    fit.points.emplace_back(std::log(x), std::log(y));
  }
  const double m = static_cast<double>(fit.points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : fit.points) {
    mx += x;
    my += y;
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [x, y] : fit.points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("log-log fit needs at least two distinct x values");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (const auto& [x, y] : fit.points) {
    const double r = y - (fit.intercept + fit.slope * x);
    ssr += r * r;
  }
  fit.stderr_slope = std::sqrt(ssr / (m - 2.0) / sxx);
  return fit;
}

MeanEstimate mean_estimate(const std::vector<double>& samples) {
  MeanEstimate e;
  e.count = samples.size();
  if (samples.empty()) return e;
  for (double x : samples) e.mean += x;
  e.mean /= static_cast<double>(samples.size());
  if (samples.size() < 2) return e;
  double ss = 0.0;
  for (double x : samples) ss += (x - e.mean) * (x - e.mean);
  e.stderr_mean = std::sqrt(ss / static_cast<double>(samples.size() - 1) / static_cast<double>(samples.size()));
  return e;
}

}  // namespace snlw

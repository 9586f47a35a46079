#pragma once

#include <utility>
#include <vector>

namespace snlw {

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  std::vector<std::pair<double, double>> points;  // (log x, log y)
};

/// Ordinary least squares of log y on log x. Needs at least three points and
/// positive data; throws InvalidArgument otherwise. stderr_slope is the usual
/// residual-based standard error (zero for an exact power law).
RegressionFit loglog_fit(const std::vector<std::pair<double, double>>& xy);

/// Sample mean and standard error of the mean.
struct MeanEstimate {
  double mean = 0.0;
  double stderr_mean = 0.0;
  std::size_t count = 0;
};
MeanEstimate mean_estimate(const std::vector<double>& samples);

}  // namespace snlw

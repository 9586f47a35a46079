#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "snlw/grid.hpp"
#include "snlw/solver.hpp"
#include "snlw/verify.hpp"

namespace snlw {

/// Trajectory CSV. Leading '#' lines carry the format version and the resolved
/// configuration; then the header
///   t,hs_norm,E_total,E_kinetic,E_mass,E_gradient,E_quartic,log2_N
/// with log2_N empty for unsmoothed energies. Numbers use 17 significant digits.
std::string trajectory_csv(const std::vector<StepRecord>& records, const std::string& config_text);

/// Per-window schedule log as CSV, same '#' preamble:
///   window,log2_N,t_start,t_end,sup_energy,hs_norm_end,within_alpha,boundary_energy,violation
std::string schedule_csv(const std::vector<WindowLog>& windows, const std::string& config_text);

/// Binary field dump, little-endian throughout:
///   char[8]  magic "SNLWFLD\0"
///   uint32   format version
///   uint32   n
///   float64  L
///   float64  t
///   uint64   byte length of the configuration text, followed by the text
///   float64  n*n samples, row-major (first index = x1)
std::vector<unsigned char> field_dump(const RealField& f, double t, const std::string& config_text);
struct FieldDump {
  RealField field;
  double t = 0.0;
  std::string config_text;
};
FieldDump read_field_dump(const std::vector<unsigned char>& bytes);

/// {"format_version", "config", "reports": [{name, statistic, band_low,
/// band_high, samples, pass, metadata: {...}}]}. Non-finite numbers are
/// written as strings ("inf", "-inf", "nan").
std::string reports_json(const std::vector<TestReport>& reports, const std::string& config_text);
/// name,statistic,band_low,band_high,samples,pass with the '#' preamble.
std::string reports_csv(const std::vector<TestReport>& reports, const std::string& config_text);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_bytes(const std::filesystem::path& path, const std::vector<unsigned char>& bytes);

}  // namespace snlw

#include "snlw/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "snlw/config.hpp"
#include "snlw/errors.hpp"

namespace snlw {

namespace {

constexpr char kMagic[8] = {'S', 'N', 'L', 'W', 'F', 'L', 'D', '\0'};

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string preamble(const std::string& config_text) {
  std::ostringstream os;
  os << "# format_version=" << kArtifactFormatVersion << "\n# config:\n";
  std::istringstream in(config_text);
  std::string line;
  while (std::getline(in, line)) os << "#   " << line << "\n";
  return os.str();
}

template <class T>
void put(std::vector<unsigned char>& out, T value) {
  static_assert(std::endian::native == std::endian::little, "field dumps assume a little-endian host");
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.insert(out.end(), buf, buf + sizeof(T));
}

template <class T>
T get(const std::vector<unsigned char>& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw InvalidArgument("truncated field dump");
  T value;
  std::memcpy(&value, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return value;
}

nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

std::string trajectory_csv(const std::vector<StepRecord>& records, const std::string& config_text) {
  std::ostringstream os;
  os << preamble(config_text) << "t,hs_norm,E_total,E_kinetic,E_mass,E_gradient,E_quartic,log2_N\n";
  for (const auto& r : records) {
    os << num(r.t) << ',' << num(r.hs_norm) << ',' << num(r.energy.total) << ',' << num(r.energy.kinetic) << ','
       << num(r.energy.mass) << ',' << num(r.energy.gradient) << ',' << num(r.energy.quartic) << ',';
    if (r.N_exponent >= 0) os << r.N_exponent;
    os << '\n';
  }
  return os.str();
}

std::string schedule_csv(const std::vector<WindowLog>& windows, const std::string& config_text) {
  std::ostringstream os;
  os << preamble(config_text)
     << "window,log2_N,t_start,t_end,sup_energy,hs_norm_end,within_alpha,boundary_energy,violation\n";
  for (const auto& w : windows)
    os << w.index << ',' << w.N_exponent << ',' << num(w.t_start) << ',' << num(w.t_end) << ','
       << num(w.sup_energy) << ',' << num(w.hs_norm_end) << ',' << (w.within_alpha ? 1 : 0) << ','
       << num(w.boundary_energy) << ',' << (w.violation ? 1 : 0) << '\n';
  return os.str();
}

std::vector<unsigned char> field_dump(const RealField& f, double t, const std::string& config_text) {
  std::vector<unsigned char> out(kMagic, kMagic + 8);
  put<std::uint32_t>(out, kArtifactFormatVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid.n()));
  put<double>(out, f.grid.L());
  put<double>(out, t);
  put<std::uint64_t>(out, config_text.size());
  out.insert(out.end(), config_text.begin(), config_text.end());
  for (double v : f.values) put<double>(out, v);
  return out;
}

FieldDump read_field_dump(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 8) != 0) throw InvalidArgument("not a field dump");
  std::size_t pos = 8;
  const auto version = get<std::uint32_t>(bytes, pos);
  if (version != kArtifactFormatVersion) throw InvalidArgument("unsupported field dump version");
  const auto n = static_cast<int>(get<std::uint32_t>(bytes, pos));
  const double L = get<double>(bytes, pos);
  const double t = get<double>(bytes, pos);
  const auto len = get<std::uint64_t>(bytes, pos);
  if (pos + len > bytes.size()) throw InvalidArgument("truncated field dump");
  std::string text(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.begin() + static_cast<std::ptrdiff_t>(pos + len));
  pos += len;
  RealField f(GridSpec(L, n));
  for (auto& v : f.values) v = get<double>(bytes, pos);
  if (pos != bytes.size()) throw InvalidArgument("trailing bytes in field dump");
  return FieldDump{std::move(f), t, std::move(text)};
}

std::string reports_json(const std::vector<TestReport>& reports, const std::string& config_text) {
  nlohmann::ordered_json doc;
  doc["format_version"] = kArtifactFormatVersion;
  doc["config"] = config_text;
  doc["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["statistic"] = number(r.statistic);
    j["band_low"] = number(r.band_low);
    j["band_high"] = number(r.band_high);
    j["samples"] = r.samples;
    j["pass"] = r.pass;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.metadata) meta[k] = v;
    j["metadata"] = meta;
    doc["reports"].push_back(j);
  }
  return doc.dump(2) + "\n";
}

std::string reports_csv(const std::vector<TestReport>& reports, const std::string& config_text) {
  std::ostringstream os;
  os << preamble(config_text) << "name,statistic,band_low,band_high,samples,pass\n";
  for (const auto& r : reports)
    os << r.name << ',' << num(r.statistic) << ',' << num(r.band_low) << ',' << num(r.band_high) << ','
       << r.samples << ',' << (r.pass ? 1 : 0) << '\n';
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

void write_bytes(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace snlw

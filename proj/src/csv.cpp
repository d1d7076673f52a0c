#include "traction/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "io_util.hpp"

namespace traction::csv {
namespace {

constexpr const char* kSensorHeader =
    "timestamp,omega1,omega2,omega3,omega4,v,M1,M2,M3,M4,F_zf,F_dx,"
    "truth_mu1,truth_mu2,truth_mu3,truth_mu4,truth_rho_s,truth_position,"
    "truth_soil";

constexpr const char* kEstimateHeader =
    "timestamp,omega1,omega2,omega3,omega4,v,mu1,mu2,mu3,mu4,rho_s,"
    "var_omega1,var_omega2,var_omega3,var_omega4,var_v,var_mu1,var_mu2,"
    "var_mu3,var_mu4,var_rho_s,s1,s2,s3,s4,lambda,adaptation";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& field, const std::string& file,
                    std::size_t line_no) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw DataError(file + ":" + std::to_string(line_no) +
                    ": malformed number '" + field + "'");
  return v;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open file");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void check_header(const std::vector<std::string>& lines, const char* expected,
                  const std::string& path) {
  if (lines.empty())
    throw DataError(path + ":1: missing header row");
  if (lines[0] != expected)
    throw DataError(path + ":1: unexpected header (expected '" +
                    std::string(expected) + "')");
}

}  // namespace

void write_sensor_csv(const std::string& path,
                      std::span<const SensorRecord> records) {
  std::ostringstream out;
  out << kSensorHeader << '\n';
  for (const SensorRecord& r : records) {
    out << io::fmt(r.timestamp);
    for (double w : r.omega) out << ',' << io::fmt(w);
    out << ',' << io::fmt(r.v);
    for (double m : r.torque) out << ',' << io::fmt(m);
    out << ',' << io::fmt(r.f_zf) << ',' << io::fmt(r.f_dx);
    for (double mu : r.truth_mu) out << ',' << io::fmt(mu);
    out << ',' << io::fmt(r.truth_rho_s) << ',' << io::fmt(r.truth_position)
        << ',' << r.truth_soil << '\n';
  }
  io::write_file_atomic(path, out.str());
}

std::vector<SensorRecord> read_sensor_csv(const std::string& path) {
  const auto lines = read_lines(path);
  check_header(lines, kSensorHeader, path);

  std::vector<SensorRecord> records;
  records.reserve(lines.size() > 0 ? lines.size() - 1 : 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split(lines[i]);
    const std::size_t line_no = i + 1;
    if (f.size() != 19)
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": expected 19 columns, got " + std::to_string(f.size()));
    SensorRecord r;
    std::size_t c = 0;
    r.timestamp = parse_double(f[c++], path, line_no);
    for (double& w : r.omega) w = parse_double(f[c++], path, line_no);
    r.v = parse_double(f[c++], path, line_no);
    for (double& m : r.torque) m = parse_double(f[c++], path, line_no);
    r.f_zf = parse_double(f[c++], path, line_no);
    r.f_dx = parse_double(f[c++], path, line_no);
    for (double& mu : r.truth_mu) mu = parse_double(f[c++], path, line_no);
    r.truth_rho_s = parse_double(f[c++], path, line_no);
    r.truth_position = parse_double(f[c++], path, line_no);
    r.truth_soil = f[c++];
    records.push_back(std::move(r));
  }
  return records;
}

void write_estimate_csv(const std::string& path,
                        std::span<const EstimateRecord> records) {
  std::ostringstream out;
  out << kEstimateHeader << '\n';
  for (const EstimateRecord& r : records) {
    out << io::fmt(r.timestamp);
    for (double v : r.state) out << ',' << io::fmt(v);
    for (double v : r.variance) out << ',' << io::fmt(v);
    for (double v : r.slip) out << ',' << io::fmt(v);
    out << ',' << io::fmt(r.lambda) << ',' << io::fmt(r.adaptation) << '\n';
  }
  io::write_file_atomic(path, out.str());
}

std::vector<EstimateRecord> read_estimate_csv(const std::string& path) {
  const auto lines = read_lines(path);
  check_header(lines, kEstimateHeader, path);

  std::vector<EstimateRecord> records;
  records.reserve(lines.size() > 0 ? lines.size() - 1 : 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split(lines[i]);
    const std::size_t line_no = i + 1;
    if (f.size() != 27)
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": expected 27 columns, got " + std::to_string(f.size()));
    EstimateRecord r;
    std::size_t c = 0;
    r.timestamp = parse_double(f[c++], path, line_no);
    for (double& v : r.state) v = parse_double(f[c++], path, line_no);
    for (double& v : r.variance) v = parse_double(f[c++], path, line_no);
    for (double& v : r.slip) v = parse_double(f[c++], path, line_no);
    r.lambda = parse_double(f[c++], path, line_no);
    r.adaptation = parse_double(f[c++], path, line_no);
    records.push_back(r);
  }
  return records;
}

void write_bins_csv(const std::string& path,
                    std::span<const analysis::SlipBin> bins,
                    const analysis::FitResult& fit) {
  std::ostringstream out;
  out << "s_mid,count,mean_mu,sd_mu,model_mu\n";
  for (const analysis::SlipBin& b : bins) {
    const double model = fit.a * analysis::shape_value(fit.shape, b.mid());
    out << io::fmt(b.mid()) << ',' << b.count << ',' << io::fmt(b.mean_mu)
        << ',' << io::fmt(b.sd_mu) << ',' << io::fmt(model) << '\n';
  }
  io::write_file_atomic(path, out.str());
}

void write_fit_csv(const std::string& path, const analysis::FitResult& fit) {
  std::ostringstream out;
  out << "a,p,alpha1,alpha2,nrmse,r2,bins_used\n";
  out << io::fmt(fit.a) << ',' << io::fmt(fit.shape.p) << ','
      << io::fmt(fit.shape.alpha1) << ',' << io::fmt(fit.shape.alpha2) << ','
      << io::fmt(fit.nrmse) << ',' << io::fmt(fit.r2) << ',' << fit.bins_used
      << '\n';
  io::write_file_atomic(path, out.str());
}

void write_sections_csv(const std::string& path,
                        std::span<const analysis::SectionStats> stats) {
  auto opt = [](const std::optional<double>& v) {
    return v ? io::fmt(*v) : std::string("nan");
  };
  std::ostringstream out;
  out << "label,t0,t1,count,mean_s,sd_s,mean_mu,sd_mu,source\n";
  for (const analysis::SectionStats& s : stats)
    out << s.label << ',' << io::fmt(s.t0) << ',' << io::fmt(s.t1) << ','
        << s.count << ',' << opt(s.mean_s) << ',' << opt(s.sd_s) << ','
        << opt(s.mean_mu) << ',' << opt(s.sd_mu) << ',' << s.source << '\n';
  io::write_file_atomic(path, out.str());
}

void write_events_csv(const std::string& path, std::span<const double> events) {
  std::ostringstream out;
  out << "timestamp\n";
  for (double t : events) out << io::fmt(t) << '\n';
  io::write_file_atomic(path, out.str());
}

}  // namespace traction::csv

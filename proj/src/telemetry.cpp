#include "roitrack/telemetry.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "roitrack/keyvalue.hpp"

namespace roitrack {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string to_csv(const TrialRecord& record) {
  std::string out(kTelemetryHeader);
  out += '\n';
  for (const auto& s : record.samples) {
    out += format_real(s.t);
    out += ',';
    out += format_real(s.x);
    out += ',';
    out += format_real(s.y);
    out += ',';
    out += format_real(s.p);
    out += ',';
    out += to_string(s.sector);
    out += ',';
    out += format_real(s.yaw_cmd);
    out += ',';
    out += format_real(s.pitch_cmd);
    out += ',';
    out += s.visible ? '1' : '0';
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

TrialRecord parse_csv(std::string_view text, const std::string& source) {
  TrialRecord record;
  int line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    if (!header_seen) {
      if (trim(line) != kTelemetryHeader) {
        throw FormatError(source, line_no, "expected header '" + std::string(kTelemetryHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != 8) {
      throw FormatError(source, line_no, "expected 8 columns, got " + std::to_string(cells.size()));
    }
    auto real = [&](std::size_t i, const char* name) {
      if (auto v = parse_double(cells[i])) return *v;
      throw FormatError(source, line_no, std::string("column ") + name + " is not a number");
    };
    TrialSample s;
    s.t = real(0, "t");
    s.x = real(1, "x");
    s.y = real(2, "y");
    s.p = real(3, "P");
    try {
      s.sector = sector_from_string(trim(cells[4]));
    } catch (const std::invalid_argument& e) {
      throw FormatError(source, line_no, e.what());
    }
    s.yaw_cmd = real(5, "yaw_cmd");
    s.pitch_cmd = real(6, "pitch_cmd");
    const auto vis = trim(cells[7]);
    if (vis != "0" && vis != "1") throw FormatError(source, line_no, "visible must be 0 or 1");
    s.visible = vis == "1";
    if (!record.samples.empty() && !(s.t > record.samples.back().t)) {
      throw FormatError(source, line_no, "time column must be strictly increasing");
    }
    record.samples.push_back(s);
  }
  if (!header_seen) throw FormatError(source, line_no, "missing header row");

  const auto& ss = record.samples;
  double dt = record.config.dt;
  if (ss.size() >= 2) {
    dt = (ss.back().t - ss.front().t) / static_cast<double>(ss.size() - 1);
  } else if (ss.size() == 1 && ss.front().t > 0.0) {
    dt = ss.front().t;
  }
  record.config.dt = dt;
  for (auto& s : record.samples) s.tick = static_cast<std::uint64_t>(std::llround(s.t / dt));
  return record;
}

TrialRecord serialized(const TrialRecord& record) {
  TrialRecord out = parse_csv(to_csv(record));
  const double dt = out.config.dt;
  out.config = record.config;
  out.config.dt = dt;
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace roitrack

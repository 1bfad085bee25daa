#include "roitrack/app.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "roitrack/protocol.hpp"
#include "roitrack/telemetry.hpp"

namespace roitrack::app {

namespace fs = std::filesystem;

namespace {

// Keys a manifest carries for provenance only; accepted and ignored by --config.
constexpr std::string_view kInformationalKeys[] = {
    "tool_version", "arena_fixture_hash", "seeds", "artifact", "uav_x_m", "uav_y_m",
    "frame_width_px", "frame_height_px", "max_rudder_rad_s"};

std::string seed_list(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(seeds[i]);
  }
  return out;
}

std::string opt_text(const std::optional<double>& v) {
  return v ? format_exact(*v) : std::string("absent");
}

}  // namespace

void RunSettings::apply_config(const KeyValueDoc& doc) {
  const std::map<std::string_view, std::optional<double>*> reals{
      {"duration_s", &duration_s},     {"usv_speed_mps", &usv_speed_mps},
      {"dt_s", &dt_s},                 {"roi_frac_x", &roi_frac_x},
      {"roi_frac_y", &roi_frac_y},     {"rate_rad_s", &rate_rad_s},
      {"fov_deg", &fov_deg},           {"jitter_m", &jitter_m},
      {"lookahead_m", &lookahead_m},   {"uav_altitude_m", &uav_altitude_m},
      {"keepalive_s", &keepalive_s}};
  for (const auto& e : doc.entries()) {
    if (auto it = reals.find(e.key); it != reals.end()) {
      *it->second = doc.get_double(e.key);
    } else if (e.key == "arena_id") {
      arena_id = static_cast<int>(*doc.get_int(e.key));
    } else if (e.key == "trials") {
      trials = static_cast<int>(*doc.get_int(e.key));
    } else if (e.key == "seed") {
      const auto v = doc.get_int(e.key);
      if (*v < 0) throw FormatError(doc.source(), e.line, "seed must be non-negative");
      seed = static_cast<std::uint64_t>(*v);
    } else if (e.key == "arena_file") {
      arena_file = fs::path(e.value);
    } else if (std::find(std::begin(kInformationalKeys), std::end(kInformationalKeys), e.key) ==
               std::end(kInformationalKeys)) {
      throw FormatError(doc.source(), e.line, "unknown key '" + e.key + "'");
    }
  }
}

ArenaSpec RunSettings::arena() const {
  if (arena_file) {
    ArenaSpec spec = parse_arena(read_file(*arena_file), arena_file->string());
    if (spec.id == 0) spec.id = arena_id;
    return spec;
  }
  try {
    return builtin_arena(arena_id);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

TrialConfig RunSettings::trial_config() const {
  TrialConfig cfg = config_for_arena(arena());
  if (duration_s) cfg.duration = *duration_s;
  if (usv_speed_mps) cfg.usv_speed = *usv_speed_mps;
  if (dt_s) cfg.dt = *dt_s;
  if (jitter_m) cfg.jitter_amplitude = *jitter_m;
  if (lookahead_m) cfg.lookahead = *lookahead_m;
  if (uav_altitude_m) cfg.uav.altitude = *uav_altitude_m;
  cfg.camera.horizontal_fov = fov_deg.value_or(kDefaultFovDeg) * std::numbers::pi / 180.0;
  try {
    cfg.controller = ControllerConfig::with_fractions(
        cfg.camera.frame, roi_frac_x.value_or(kDefaultRoiFraction),
        roi_frac_y.value_or(kDefaultRoiFraction), rate_rad_s.value_or(kMaxGimbalRate));
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

std::string manifest_text(const RunSettings& settings, const std::vector<std::string>& artifacts) {
  const TrialConfig cfg = settings.trial_config();
  const ArenaSpec arena = settings.arena();
  std::ostringstream out;
  out << "# roitrack run manifest; pass back with --config to reproduce\n";
  out << "tool_version = " << kToolVersion << "\n";
  out << "arena_id = " << settings.arena_id << "\n";
  if (settings.arena_file) out << "arena_file = " << settings.arena_file->string() << "\n";
  out << "arena_fixture_hash = " << content_hash(arena.text) << "\n";
  out << "trials = " << settings.trials << "\n";
  out << "seed = " << settings.seed << "\n";
  out << "seeds = " << seed_list(settings.seeds()) << "\n";
  out << "duration_s = " << format_exact(cfg.duration) << "\n";
  out << "usv_speed_mps = " << format_exact(cfg.usv_speed) << "\n";
  out << "dt_s = " << format_exact(cfg.dt) << "\n";
  out << "roi_frac_x = " << format_exact(settings.roi_frac_x.value_or(kDefaultRoiFraction)) << "\n";
  out << "roi_frac_y = " << format_exact(settings.roi_frac_y.value_or(kDefaultRoiFraction)) << "\n";
  out << "rate_rad_s = " << format_exact(cfg.controller.rate_magnitude) << "\n";
  out << "fov_deg = "
      << format_exact(settings.fov_deg.value_or(kDefaultFovDeg)) << "\n";
  out << "jitter_m = " << format_exact(cfg.jitter_amplitude) << "\n";
  out << "lookahead_m = " << format_exact(cfg.lookahead) << "\n";
  out << "uav_altitude_m = " << format_exact(cfg.uav.altitude) << "\n";
  out << "uav_x_m = " << format_exact(cfg.uav.x) << "\n";
  out << "uav_y_m = " << format_exact(cfg.uav.y) << "\n";
  out << "frame_width_px = " << cfg.camera.frame.width << "\n";
  out << "frame_height_px = " << cfg.camera.frame.height << "\n";
  out << "max_rudder_rad_s = " << format_exact(cfg.max_rudder) << "\n";
  for (const auto& a : artifacts) out << "artifact = " << a << "\n";
  return out.str();
}

std::string report_text(const SensitivityReport& r) {
  std::ostringstream out;
  out << "trials = " << r.trials << "\n";
  out << "n = " << r.n << "\n";
  out << "n_per_trial = " << format_exact(r.n_per_trial) << "\n";
  out << "mean_s = " << opt_text(r.mean_s) << "\n";
  out << "normalized_s = " << opt_text(r.normalized_s) << "\n";
  out << "success = " << (r.success ? "true" : "false") << "\n";
  out << "lost_samples = " << r.lost_samples << "\n";
  out << "yaw_active_s = " << format_exact(r.yaw_seconds) << "\n";
  out << "pitch_active_s = " << format_exact(r.pitch_seconds) << "\n";
  out << "overlap_s = " << format_exact(r.overlap_seconds) << "\n";
  out << "per_peak_s =";
  for (std::size_t i = 0; i < r.per_peak_s.size(); ++i) {
    out << (i ? ", " : " ") << format_exact(r.per_peak_s[i]);
  }
  out << "\n";
  return out.str();
}

fs::path default_out_dir() {
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return fs::path(env);
  return fs::path(kDefaultOutDir);
}

SimulateResult simulate(const RunSettings& settings, const fs::path& out_dir) {
  const TrialConfig cfg = settings.trial_config();
  const auto seeds = settings.seeds();
  const auto records = run_batch(cfg, settings.trials, seeds);

  fs::create_directories(out_dir);
  SimulateResult result;
  std::vector<TrialRecord> written;
  std::vector<std::string> artifacts;
  for (std::size_t i = 0; i < records.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "trial_%03zu.csv", i + 1);
    const std::string csv = to_csv(records[i]);
    write_file(out_dir / name, csv);
    result.csv_files.push_back(out_dir / name);
    artifacts.emplace_back(name);
    // The summary is computed from exactly what the CSVs hold.
    written.push_back(parse_csv(csv, name));
  }
  result.report = summarize(written);
  write_file(out_dir / "summary.txt", report_text(result.report));
  artifacts.emplace_back("summary.txt");
  write_file(out_dir / "manifest.txt", manifest_text(settings, artifacts));
  result.code = result.report.success ? kOk : kTrackingLost;
  return result;
}

namespace {

struct LogRow {
  double t;
  double col;
  double row;
};

std::vector<LogRow> parse_coordinate_log(std::string_view text, const std::string& source) {
  std::vector<LogRow> rows;
  int line_no = 0;
  bool first = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const bool header = first && line.rfind("t,", 0) == 0;
    first = false;
    if (header) continue;

    double v[3];
    std::size_t start = 0;
    for (int k = 0; k < 3; ++k) {
      const auto comma = line.find(',', start);
      if ((k < 2) == (comma == std::string_view::npos)) {
        throw FormatError(source, line_no, "expected 3 columns t,x,y");
      }
      const auto cell = line.substr(start, comma == std::string_view::npos ? comma : comma - start);
      const auto parsed = parse_double(cell);
      if (!parsed) throw FormatError(source, line_no, "'" + std::string(cell) + "' is not a number");
      v[k] = *parsed;
      start = comma + 1;
    }
    if (!rows.empty() && !(v[0] > rows.back().t)) {
      throw FormatError(source, line_no, "time must be strictly increasing");
    }
    rows.push_back({v[0], v[1], v[2]});
  }
  return rows;
}

}  // namespace

ReplayResult replay(const fs::path& log, const RunSettings& settings, const fs::path& out_dir) {
  const TrialConfig cfg = settings.trial_config();
  const FrameSpec frame = cfg.controller.frame;
  const auto rows = parse_coordinate_log(read_file(log), log.string());

  fk::CommandLink link(settings.keepalive_s.value_or(1.0));
  fk::MockTransport wire;
  std::deque<fk::SerialFrame> pending;
  auto pump = [&](double t) {
    while (!pending.empty() && wire.try_send(pending.front(), t)) pending.pop_front();
  };

  TrialRecord record;
  record.config = cfg;
  for (const auto& r : rows) {
    const ImagePoint p = to_centered(r.row, r.col, frame);
    const bool visible =
        std::abs(p.x) <= frame.half_width() && std::abs(p.y) <= frame.half_height();
    const GimbalCommand cmd = visible ? step(p, cfg.controller) : GimbalCommand{};
    TrialSample s;
    s.t = r.t;
    s.x = p.x;
    s.y = p.y;
    s.p = relative_position(p, cfg.controller.roi);
    s.sector = classify_sector(to_polar(p).theta);
    s.yaw_cmd = cmd.yaw_rate;
    s.pitch_cmd = cmd.pitch_rate;
    s.visible = visible;
    record.samples.push_back(s);

    for (auto& f : link.update(r.t, cmd)) pending.push_back(std::move(f));
    pump(r.t);
  }
  // Let the UART drain whatever is still queued.
  double t = rows.empty() ? 0.0 : rows.back().t;
  while (!pending.empty()) {
    t += static_cast<double>(pending.front().wire_size()) / fk::kLineBytesPerSecond;
    pump(t);
  }

  fs::create_directories(out_dir);
  const std::string stem = log.stem().string();
  ReplayResult result;
  result.rows = rows.size();
  result.commands_csv = out_dir / (stem + "_commands.csv");
  result.frames_csv = out_dir / (stem + "_frames.csv");
  write_file(result.commands_csv, to_csv(record));
  std::string frames = "t,frame\n";
  for (const auto& f : wire.log()) frames += format_real(f.t) + "," + f.text + "\n";
  write_file(result.frames_csv, frames);
  result.frames = wire.log().size();
  result.wire_bytes = wire.bytes_sent();
  return result;
}

void report(const std::vector<std::vector<fs::path>>& groups, std::ostream& out) {
  if (groups.empty()) throw UsageError("report needs at least one CSV file");
  std::vector<SensitivityReport> reports;
  for (const auto& group : groups) {
    if (group.empty()) throw UsageError("empty CSV group");
    std::vector<TrialRecord> records;
    for (const auto& path : group) records.push_back(parse_csv(read_file(path), path.string()));
    reports.push_back(summarize(records));
  }
  if (reports.size() == 1) {
    out << report_text(reports.front());
    return;
  }
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out << "[group " << i + 1 << "]\n" << report_text(reports[i]);
  }
  out << "[all]\n";
  out << "cross_arena_normalized_s = " << opt_text(cross_arena_normalized(reports)) << "\n";
}

}  // namespace roitrack::app

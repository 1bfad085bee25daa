#include "roitrack/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace roitrack {

std::vector<Excursion> detect_excursions(const TrialRecord& record) {
  const auto& samples = record.samples;
  if (samples.empty()) throw std::invalid_argument("cannot detect excursions in an empty record");

  std::vector<Excursion> out;
  std::optional<Excursion> current;
  for (const auto& s : samples) {
    if (s.p > 1.0) {
      if (!current) current = Excursion{s.t, s.t, s.p, false};
      current->p_max = std::max(current->p_max, s.p);
    } else if (current) {
      current->t_end = s.t;
      out.push_back(*current);
      current.reset();
    }
  }
  if (current) {
    current->open = true;
    current->t_end = samples.back().t;
    if (current->t_end <= current->t_start) current->t_end = current->t_start + record.dt();
    out.push_back(*current);
  }
  return out;
}

double peak_sensitivity(const Excursion& e, PeakHeight height) {
  const double b = e.breadth();
  if (!(b > 0.0)) throw std::invalid_argument("excursion breadth must be positive");
  const double h = height == PeakHeight::AboveBoundary ? e.p_max - 1.0 : e.p_max;
  return h / b;
}

std::optional<double> normalize(double mean_s, double n) {
  if (!(n > 0.0)) return std::nullopt;
  return mean_s / n;
}

ControlExpenditure control_expenditure(const TrialRecord& record) {
  if (record.samples.empty()) throw std::invalid_argument("empty record");
  std::size_t yaw = 0, pitch = 0, both = 0;
  for (const auto& s : record.samples) {
    yaw += s.yaw_cmd != 0.0;
    pitch += s.pitch_cmd != 0.0;
    both += s.yaw_cmd != 0.0 && s.pitch_cmd != 0.0;
  }
  const double dt = record.dt();
  return {static_cast<double>(yaw) * dt, static_cast<double>(pitch) * dt,
          static_cast<double>(both) * dt};
}

namespace {

double sorted_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return std::accumulate(values.begin(), values.end(), 0.0);
}

}  // namespace

SensitivityReport summarize(std::span<const TrialRecord> records, const MetricsOptions& opts) {
  if (records.empty()) throw std::invalid_argument("summarize needs at least one record");

  SensitivityReport report;
  report.trials = records.size();
  std::vector<double> yaw, pitch, overlap;
  for (const auto& rec : records) {
    for (const auto& e : detect_excursions(rec)) {
      if (e.open && !opts.include_open) continue;
      report.excursions.push_back(e);
    }
    for (const auto& s : rec.samples) report.lost_samples += !s.visible;
    const auto spend = control_expenditure(rec);
    yaw.push_back(spend.yaw_seconds);
    pitch.push_back(spend.pitch_seconds);
    overlap.push_back(spend.overlap_seconds);
  }
  std::sort(report.excursions.begin(), report.excursions.end(),
            [](const Excursion& a, const Excursion& b) {
              return std::tie(a.t_start, a.t_end, a.p_max, a.open) <
                     std::tie(b.t_start, b.t_end, b.p_max, b.open);
            });

  report.n = report.excursions.size();
  report.n_per_trial = static_cast<double>(report.n) / static_cast<double>(report.trials);
  for (const auto& e : report.excursions) {
    report.per_peak_s.push_back(peak_sensitivity(e, opts.height));
  }
  if (report.n > 0) {
    report.mean_s = sorted_sum(report.per_peak_s) / static_cast<double>(report.n);
    report.normalized_s = normalize(*report.mean_s, report.n_per_trial);
  }
  report.success = report.lost_samples == 0;
  report.yaw_seconds = sorted_sum(yaw);
  report.pitch_seconds = sorted_sum(pitch);
  report.overlap_seconds = sorted_sum(overlap);
  return report;
}

std::optional<double> cross_arena_normalized(std::span<const SensitivityReport> per_arena) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& r : per_arena) {
    if (!r.normalized_s) continue;
    sum += *r.normalized_s;
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

}  // namespace roitrack

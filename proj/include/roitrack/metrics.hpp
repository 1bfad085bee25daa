#pragma once

#include <optional>
#include <span>
#include <vector>

#include "roitrack/trials.hpp"

namespace roitrack {

/// A maximal run of samples with P > 1.
struct Excursion {
  double t_start = 0.0;  // first sample with P > 1
  double t_end = 0.0;    // first later sample with P <= 1
  double p_max = 0.0;
  bool open = false;     // still outside when the record ended

  double breadth() const { return t_end - t_start; }
  friend bool operator==(const Excursion&, const Excursion&) = default;
};

/// Baseline that the peak height is measured from.
enum class PeakHeight {
  AboveBoundary,  // h = p_max - 1
  Absolute,       // h = p_max
};

struct MetricsOptions {
  PeakHeight height = PeakHeight::AboveBoundary;
  bool include_open = true;
};

/// Open excursions are closed at the final sample; one that starts on the
/// final sample is given a breadth of one dt.
std::vector<Excursion> detect_excursions(const TrialRecord& record);

/// Sensitivity s = h / b with b in seconds.
double peak_sensitivity(const Excursion& e, PeakHeight height = PeakHeight::AboveBoundary);

/// Normalized sensitivity mean_s / n; absent when n == 0.
std::optional<double> normalize(double mean_s, double n);

struct ControlExpenditure {
  double yaw_seconds = 0.0;
  double pitch_seconds = 0.0;
  double overlap_seconds = 0.0;

  friend bool operator==(const ControlExpenditure&, const ControlExpenditure&) = default;
};

ControlExpenditure control_expenditure(const TrialRecord& record);

struct SensitivityReport {
  std::size_t trials = 0;
  std::vector<Excursion> excursions;  // all trials, canonical order
  std::size_t n = 0;                  // excursions.size()
  double n_per_trial = 0.0;
  std::vector<double> per_peak_s;     // aligned with excursions
  std::optional<double> mean_s;
  std::optional<double> normalized_s; // mean_s / n_per_trial
  bool success = true;                // every sample of every trial visible
  std::size_t lost_samples = 0;
  double yaw_seconds = 0.0;
  double pitch_seconds = 0.0;
  double overlap_seconds = 0.0;

  friend bool operator==(const SensitivityReport&, const SensitivityReport&) = default;
};

/// Aggregate over trials. The result does not depend on record order.
SensitivityReport summarize(std::span<const TrialRecord> records, const MetricsOptions& opts = {});

/// Mean over arenas of each arena's normalized sensitivity.
std::optional<double> cross_arena_normalized(std::span<const SensitivityReport> per_arena);

}  // namespace roitrack

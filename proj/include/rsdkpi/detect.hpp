#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rsdkpi/cohort.hpp"
#include "rsdkpi/stats.hpp"

namespace rsdkpi {

struct ClassifierConfig {
    double stable_threshold = 0.10;
    double warning_band = 0.05;

    friend bool operator==(const ClassifierConfig&, const ClassifierConfig&) = default;
};

enum class PerformanceClass { Stable, Warning, Unstable };

std::string_view to_string(PerformanceClass c);
PerformanceClass performance_class_from_string(std::string_view name);

// Stable up to and including the threshold, Warning inside the band above
// it, Unstable beyond. Negative input throws ValidationError.
PerformanceClass classify(double summary_rsd, const ClassifierConfig& config = {});

struct DetectorConfig {
    int baseline_window = 12;  // >= 2
    int test_window = 3;       // >= 1
    double k_sigmas = 2.0;     // > 0
    int min_consecutive = 2;   // >= 1

    friend bool operator==(const DetectorConfig&, const DetectorConfig&) = default;
};

struct ShiftAlert {
    std::string subject_id;
    Month fired_period;
    double baseline_mean = 0.0;
    double baseline_sd = 0.0;
    double observed_mean = 0.0;
    double magnitude_sigmas = 0.0;

    friend bool operator==(const ShiftAlert&, const ShiftAlert&) = default;
};

// Upward mean-shift detector.
//
// Evaluations run per observation within a segment that starts at an anchor.
// The baseline is every non-quarantined segment point before the test window
// (at least baseline_window of them by construction); the trigger is
// test-window mean > baseline mean + k_sigmas * baseline sd. A triggering
// evaluation quarantines its test-window points so suspect observations
// never contaminate later baselines. The excess must persist across
// min_consecutive whole test windows, i.e. (min_consecutive-1)*test_window+1
// consecutive triggering evaluations, before one alert fires; the detector
// then re-anchors after the fired period and clears the quarantine set.
// With a flat baseline (sd = 0) the trigger degenerates to an absolute
// epsilon of 1e-9. Returns nullopt when the series is shorter than
// baseline_window + test_window (insufficient data, not an alert).
std::optional<std::vector<ShiftAlert>> detect_shift(std::string subject_id,
                                                    std::span<const Month> periods,
                                                    std::span<const double> values,
                                                    const DetectorConfig& config = {});

std::optional<std::vector<ShiftAlert>> detect_shift(const RsdSeries& rsd,
                                                    const DetectorConfig& config = {});
std::optional<std::vector<ShiftAlert>> detect_shift(const AdjustedRsdSeries& adjusted,
                                                    const DetectorConfig& config = {});

// Balanced-scorecard KPI: mean of the first w volatility values minus the
// mean of the last w. Positive = volatility fell. Absent below 2w points.
std::optional<double> bsc_trend_kpi(const VolatilitySeries& vol, int w = 6);

enum class Direction { lower_is_better, higher_is_better };

Direction direction_from_string(std::string_view name);
std::string_view to_string(Direction d);

struct CompositeIndicator {
    std::string name;
    double value = 0.0;
    double weight = 1.0;
    Direction direction = Direction::lower_is_better;

    friend bool operator==(const CompositeIndicator&, const CompositeIndicator&) = default;
};

// Per-indicator [min, max] across the cohort, keyed by indicator name.
using IndicatorContext = std::map<std::string, std::pair<double, double>>;

IndicatorContext indicator_context(
    const std::map<std::string, std::vector<CompositeIndicator>>& by_subject);

// Min-max normalizes each indicator over the cohort (flipped for
// lower_is_better so 1 is best; a constant indicator contributes 0.5), then
// combines with weights normalized to sum 1. All-zero or negative weights
// throw ConfigError.
double composite_kpi(const std::vector<CompositeIndicator>& indicators,
                     const IndicatorContext& context);

std::map<std::string, double> composite_scores(
    const std::map<std::string, std::vector<CompositeIndicator>>& by_subject);

}  // namespace rsdkpi

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rsdkpi/detect.hpp"
#include "rsdkpi/period.hpp"
#include "rsdkpi/stats.hpp"

namespace rsdkpi {

// Which series feeds the shift detector. The cohort-adjusted series is the
// default: with group-wide effects filtered out, alerts point at individual
// anomalies instead of shared shocks.
enum class DetectOn { raw, adjusted };

DetectOn detect_on_from_string(std::string_view name);
std::string_view to_string(DetectOn d);

struct AnalysisConfig {
    Grain grain = Grain::month;
    RsdVariant variant = RsdVariant::paper;
    int volatility_window = 6;
    DetectorConfig detector;
    DetectOn detect_on = DetectOn::adjusted;
    ClassifierConfig classifier;
    int bsc_window = 6;

    friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

// Range checks for every parameter above; throws ConfigError naming the
// offending field.
void validate(const AnalysisConfig& config);

}  // namespace rsdkpi

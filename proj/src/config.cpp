#include "rsdkpi/config.hpp"

#include "rsdkpi/errors.hpp"

namespace rsdkpi {

DetectOn detect_on_from_string(std::string_view name) {
    if (name == "raw") return DetectOn::raw;
    if (name == "adjusted") return DetectOn::adjusted;
    throw ConfigError("unknown detect-on value '" + std::string(name) + "'");
}

std::string_view to_string(DetectOn d) {
    return d == DetectOn::raw ? "raw" : "adjusted";
}

void validate(const AnalysisConfig& config) {
    if (config.volatility_window < 2)
        throw ConfigError("volatility window must be at least 2");
    if (config.detector.baseline_window < 2)
        throw ConfigError("baseline window must be at least 2");
    if (config.detector.test_window < 1)
        throw ConfigError("test window must be at least 1");
    if (!(config.detector.k_sigmas > 0))
        throw ConfigError("k sigmas must be positive");
    if (config.detector.min_consecutive < 1)
        throw ConfigError("min consecutive must be at least 1");
    if (!(config.classifier.stable_threshold > 0))
        throw ConfigError("stable threshold must be positive");
    if (config.classifier.warning_band < 0)
        throw ConfigError("warning band must be non-negative");
    if (config.bsc_window < 1) throw ConfigError("bsc window must be at least 1");
}

}  // namespace rsdkpi

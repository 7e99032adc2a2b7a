#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsdkpi/model.hpp"

namespace rsdkpi {

// `paper` keeps sigma exactly as printed in the source formula (no division
// by the sample count), so RSD = sqrt(2)*|x_at - x_tt|/(x_at + x_tt).
// `population` applies the 1/N correction, dropping the sqrt(2).
enum class RsdVariant { paper, population };

RsdVariant rsd_variant_from_string(std::string_view name);
std::string_view to_string(RsdVariant v);

struct RsdPoint {
    Month period;
    double rsd = 0.0;

    friend bool operator==(const RsdPoint&, const RsdPoint&) = default;
};

struct RsdSeries {
    std::string subject_id;
    std::vector<RsdPoint> points;

    friend bool operator==(const RsdSeries&, const RsdSeries&) = default;
};

// Differences between consecutive observations (positional, gaps ignored).
// period is the later of the pair.
struct DeltaPoint {
    Month period;
    Hours delta_target;
    Hours delta_actual;

    friend bool operator==(const DeltaPoint&, const DeltaPoint&) = default;
};

struct VolatilityPoint {
    Month period;
    double volatility = 0.0;

    friend bool operator==(const VolatilityPoint&, const VolatilityPoint&) = default;
};

// Trailing-window sample standard deviation of the RSD series. A point is
// emitted wherever the window ending there holds at least two observations.
struct VolatilitySeries {
    std::string subject_id;
    int window = 0;
    std::vector<VolatilityPoint> points;

    friend bool operator==(const VolatilitySeries&, const VolatilitySeries&) = default;
};

// RSD of the two-element set {target, actual}. Returns 0 for (0, 0) by
// convention: an idle period with an idle target is perfectly fulfilled.
// Negative input throws ValidationError.
double pairwise_rsd(double target_hours, double actual_hours, RsdVariant variant);

RsdSeries rsd_series(const SubjectSeries& series, RsdVariant variant);

std::vector<DeltaPoint> delta_series(const SubjectSeries& series);

// window < 2 throws ConfigError.
VolatilitySeries volatility_series(const RsdSeries& rsd, int window);

// OLS slope of value against observation index over the trailing `window`
// points. Absent (not zero) when fewer than two points are available.
std::optional<double> trend_slope(std::span<const double> values, int window);

double mean_of(std::span<const double> values);
double sample_sd(std::span<const double> values);

}  // namespace rsdkpi

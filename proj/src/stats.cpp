#include "rsdkpi/stats.hpp"

#include <algorithm>
#include <cmath>

#include "rsdkpi/errors.hpp"

namespace rsdkpi {

RsdVariant rsd_variant_from_string(std::string_view name) {
    if (name == "paper") return RsdVariant::paper;
    if (name == "population") return RsdVariant::population;
    throw ConfigError("unknown rsd variant '" + std::string(name) + "'");
}

std::string_view to_string(RsdVariant v) {
    return v == RsdVariant::paper ? "paper" : "population";
}

double pairwise_rsd(double target_hours, double actual_hours, RsdVariant variant) {
    if (target_hours < 0 || actual_hours < 0)
        throw ValidationError("pairwise_rsd requires non-negative hours");
    const double mu = (target_hours + actual_hours) / 2.0;
    if (mu == 0.0) return 0.0;
    const double dt = target_hours - mu;
    const double da = actual_hours - mu;
    double sigma = std::sqrt(dt * dt + da * da);
    if (variant == RsdVariant::population) sigma /= std::sqrt(2.0);
    return sigma / mu;
}

RsdSeries rsd_series(const SubjectSeries& series, RsdVariant variant) {
    RsdSeries out;
    out.subject_id = series.subject_id;
    out.points.reserve(series.records.size());
    for (const auto& r : series.records)
        out.points.push_back(
            RsdPoint{r.period, pairwise_rsd(r.target.value(), r.actual.value(), variant)});
    return out;
}

std::vector<DeltaPoint> delta_series(const SubjectSeries& series) {
    std::vector<DeltaPoint> out;
    if (series.records.size() < 2) return out;
    out.reserve(series.records.size() - 1);
    for (std::size_t i = 1; i < series.records.size(); ++i) {
        const auto& prev = series.records[i - 1];
        const auto& cur = series.records[i];
        out.push_back(
            DeltaPoint{cur.period, cur.target - prev.target, cur.actual - prev.actual});
    }
    return out;
}

double mean_of(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
    // A constant series has zero dispersion by definition; skipping the
    // two-pass accumulation keeps the result exactly 0.0 rather than the
    // rounding residue of (v - m).
    const bool constant = std::all_of(values.begin(), values.end(),
                                      [&](double v) { return v == values.front(); });
    if (constant) return 0.0;
    const double m = mean_of(values);
    double acc = 0.0;
    for (double v : values) acc += (v - m) * (v - m);
    return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

VolatilitySeries volatility_series(const RsdSeries& rsd, int window) {
    if (window < 2) throw ConfigError("volatility window must be at least 2");
    VolatilitySeries out;
    out.subject_id = rsd.subject_id;
    out.window = window;
    const auto& pts = rsd.points;
    std::vector<double> buf;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const std::size_t lo = i + 1 >= static_cast<std::size_t>(window) ? i + 1 - window : 0;
        buf.clear();
        for (std::size_t j = lo; j <= i; ++j) buf.push_back(pts[j].rsd);
        out.points.push_back(VolatilityPoint{pts[i].period, sample_sd(buf)});
    }
    return out;
}

std::optional<double> trend_slope(std::span<const double> values, int window) {
    if (window < 2) throw ConfigError("trend window must be at least 2");
    const std::size_t n = values.size();
    if (n < 2) return std::nullopt;
    const std::size_t lo = n >= static_cast<std::size_t>(window) ? n - window : 0;
    const std::size_t count = n - lo;
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = lo; i < n; ++i) {
        mean_x += static_cast<double>(i);
        mean_y += values[i];
    }
    mean_x /= static_cast<double>(count);
    mean_y /= static_cast<double>(count);
    double cov = 0.0, var = 0.0;
    for (std::size_t i = lo; i < n; ++i) {
        const double dx = static_cast<double>(i) - mean_x;
        cov += dx * (values[i] - mean_y);
        var += dx * dx;
    }
    return cov / var;
}

}  // namespace rsdkpi

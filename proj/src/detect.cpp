#include "rsdkpi/detect.hpp"

#include <algorithm>
#include <cmath>

#include "rsdkpi/errors.hpp"

namespace rsdkpi {

namespace {

constexpr double kFlatEps = 1e-9;

void validate(const DetectorConfig& c) {
    if (c.baseline_window < 2) throw ConfigError("baseline window must be at least 2");
    if (c.test_window < 1) throw ConfigError("test window must be at least 1");
    if (!(c.k_sigmas > 0)) throw ConfigError("k sigmas must be positive");
    if (c.min_consecutive < 1) throw ConfigError("min consecutive must be at least 1");
}

}  // namespace

std::string_view to_string(PerformanceClass c) {
    switch (c) {
        case PerformanceClass::Stable: return "Stable";
        case PerformanceClass::Warning: return "Warning";
        case PerformanceClass::Unstable: return "Unstable";
    }
    return "Stable";
}

PerformanceClass performance_class_from_string(std::string_view name) {
    if (name == "Stable") return PerformanceClass::Stable;
    if (name == "Warning") return PerformanceClass::Warning;
    if (name == "Unstable") return PerformanceClass::Unstable;
    throw ValidationError("unknown performance class '" + std::string(name) + "'");
}

PerformanceClass classify(double summary_rsd, const ClassifierConfig& config) {
    if (!(config.stable_threshold > 0)) throw ConfigError("stable threshold must be positive");
    if (config.warning_band < 0) throw ConfigError("warning band must be non-negative");
    if (summary_rsd < 0) throw ValidationError("summary rsd must be non-negative");
    if (summary_rsd <= config.stable_threshold) return PerformanceClass::Stable;
    if (summary_rsd <= config.stable_threshold + config.warning_band)
        return PerformanceClass::Warning;
    return PerformanceClass::Unstable;
}

std::optional<std::vector<ShiftAlert>> detect_shift(std::string subject_id,
                                                    std::span<const Month> periods,
                                                    std::span<const double> values,
                                                    const DetectorConfig& config) {
    validate(config);
    if (periods.size() != values.size())
        throw std::logic_error("detect_shift: periods and values differ in length");
    const int n = static_cast<int>(values.size());
    const int bw = config.baseline_window;
    const int tw = config.test_window;
    if (n < bw + tw) return std::nullopt;

    // Persistence: the excess must hold across min_consecutive whole test
    // windows, i.e. this many back-to-back triggering evaluations.
    const int run_needed = (config.min_consecutive - 1) * tw + 1;

    std::vector<ShiftAlert> alerts;
    std::vector<char> quarantined(values.size(), 0);
    int anchor = 0;
    int streak = 0;
    int p = anchor + bw + tw - 1;
    while (p < n) {
        double base_sum = 0.0;
        int base_n = 0;
        for (int i = anchor; i <= p - tw; ++i) {
            if (quarantined[i]) continue;
            base_sum += values[i];
            ++base_n;
        }
        // The first bw segment points never sit in a test window, so
        // base_n >= bw >= 2 always holds.
        const double bm = base_sum / base_n;
        double acc = 0.0;
        for (int i = anchor; i <= p - tw; ++i) {
            if (quarantined[i]) continue;
            acc += (values[i] - bm) * (values[i] - bm);
        }
        const double bs = std::sqrt(acc / (base_n - 1));

        double obs_sum = 0.0;
        for (int i = p - tw + 1; i <= p; ++i) obs_sum += values[i];
        const double om = obs_sum / tw;

        const double excess = bs > 0 ? config.k_sigmas * bs : kFlatEps;
        if (om > bm + excess) {
            for (int i = p - tw + 1; i <= p; ++i) quarantined[i] = 1;
            ++streak;
            if (streak >= run_needed) {
                ShiftAlert alert;
                alert.subject_id = subject_id;
                alert.fired_period = periods[p];
                alert.baseline_mean = bm;
                alert.baseline_sd = bs;
                alert.observed_mean = om;
                alert.magnitude_sigmas = (om - bm) / std::max(bs, kFlatEps);
                alerts.push_back(std::move(alert));
                anchor = p + 1;
                std::fill(quarantined.begin(), quarantined.end(), 0);
                streak = 0;
                p = anchor + bw + tw - 1;
                continue;
            }
        } else {
            streak = 0;
        }
        ++p;
    }
    return alerts;
}

std::optional<std::vector<ShiftAlert>> detect_shift(const RsdSeries& rsd,
                                                    const DetectorConfig& config) {
    std::vector<Month> periods;
    std::vector<double> values;
    periods.reserve(rsd.points.size());
    values.reserve(rsd.points.size());
    for (const auto& p : rsd.points) {
        periods.push_back(p.period);
        values.push_back(p.rsd);
    }
    return detect_shift(rsd.subject_id, periods, values, config);
}

std::optional<std::vector<ShiftAlert>> detect_shift(const AdjustedRsdSeries& adjusted,
                                                    const DetectorConfig& config) {
    std::vector<Month> periods;
    std::vector<double> values;
    periods.reserve(adjusted.points.size());
    values.reserve(adjusted.points.size());
    for (const auto& p : adjusted.points) {
        periods.push_back(p.period);
        values.push_back(p.adjusted_rsd);
    }
    return detect_shift(adjusted.subject_id, periods, values, config);
}

std::optional<double> bsc_trend_kpi(const VolatilitySeries& vol, int w) {
    if (w < 1) throw ConfigError("bsc window must be at least 1");
    const auto& pts = vol.points;
    if (pts.size() < static_cast<std::size_t>(2 * w)) return std::nullopt;
    // Mirrored accumulation orders keep time-reversal antisymmetry exact.
    double first = 0.0, last = 0.0;
    for (int i = 0; i < w; ++i) {
        first += pts[i].volatility;
        last += pts[pts.size() - 1 - i].volatility;
    }
    return (first - last) / w;
}

Direction direction_from_string(std::string_view name) {
    if (name == "lower_is_better") return Direction::lower_is_better;
    if (name == "higher_is_better") return Direction::higher_is_better;
    throw ValidationError("unknown direction '" + std::string(name) + "'");
}

std::string_view to_string(Direction d) {
    return d == Direction::lower_is_better ? "lower_is_better" : "higher_is_better";
}

IndicatorContext indicator_context(
    const std::map<std::string, std::vector<CompositeIndicator>>& by_subject) {
    IndicatorContext ctx;
    for (const auto& [subject, indicators] : by_subject) {
        for (const auto& ind : indicators) {
            auto [it, inserted] = ctx.emplace(ind.name, std::make_pair(ind.value, ind.value));
            if (!inserted) {
                it->second.first = std::min(it->second.first, ind.value);
                it->second.second = std::max(it->second.second, ind.value);
            }
        }
    }
    return ctx;
}

double composite_kpi(const std::vector<CompositeIndicator>& indicators,
                     const IndicatorContext& context) {
    if (indicators.empty()) throw ConfigError("composite requires at least one indicator");
    double weight_sum = 0.0;
    for (const auto& ind : indicators) {
        if (ind.weight < 0) throw ConfigError("negative weight on indicator '" + ind.name + "'");
        weight_sum += ind.weight;
    }
    if (weight_sum == 0) throw ConfigError("indicator weights must not all be zero");
    double score = 0.0;
    for (const auto& ind : indicators) {
        auto it = context.find(ind.name);
        if (it == context.end())
            throw std::logic_error("indicator '" + ind.name + "' missing from cohort context");
        const auto [lo, hi] = it->second;
        double norm = lo == hi ? 0.5 : (ind.value - lo) / (hi - lo);
        if (ind.direction == Direction::lower_is_better) norm = 1.0 - norm;
        score += ind.weight / weight_sum * norm;
    }
    return score;
}

std::map<std::string, double> composite_scores(
    const std::map<std::string, std::vector<CompositeIndicator>>& by_subject) {
    const IndicatorContext ctx = indicator_context(by_subject);
    std::map<std::string, double> out;
    for (const auto& [subject, indicators] : by_subject)
        out.emplace(subject, composite_kpi(indicators, ctx));
    return out;
}

}  // namespace rsdkpi

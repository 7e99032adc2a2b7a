#include "rsdkpi/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>

#include "rsdkpi/errors.hpp"
#include "rsdkpi/normal.hpp"

namespace rsdkpi {

namespace {

void validate(const SynthConfig& c) {
    if (c.subjects < 1) throw ConfigError("subjects must be at least 1");
    if (c.periods < 1) throw ConfigError("periods must be at least 1");
    if (!(c.base_target_hours > 0)) throw ConfigError("base target hours must be positive");
    if (c.fulfilment_noise_sd < 0) throw ConfigError("noise sd must be non-negative");
    std::set<int> seen;
    for (const auto& d : c.drifts) {
        if (d.subject < 0 || d.subject >= c.subjects)
            throw ConfigError("drift subject index " + std::to_string(d.subject) +
                              " out of range");
        if (d.changepoint < 0 || d.changepoint >= c.periods)
            throw ConfigError("drift changepoint " + std::to_string(d.changepoint) +
                              " out of range");
        if (!(d.magnitude > 0)) throw ConfigError("drift magnitude must be positive");
        if (!seen.insert(d.subject).second)
            throw ConfigError("duplicate drift for subject index " +
                              std::to_string(d.subject));
    }
}

}  // namespace

std::string synth_subject_id(int index, int subjects) {
    int width = 1, v = subjects;
    while (v >= 10) {
        v /= 10;
        ++width;
    }
    width = std::clamp(width, 2, 9);
    char buf[16];
    std::snprintf(buf, sizeof buf, "WO%0*d", width, index + 1);
    return buf;
}

Cohort generate(const SynthConfig& config) {
    validate(config);
    std::map<int, DriftSpec> drift_by_subject;
    for (const auto& d : config.drifts) drift_by_subject.emplace(d.subject, d);

    std::mt19937_64 rng(config.seed);
    const Hours target = Hours::from_value(config.base_target_hours);

    Cohort cohort;
    for (int s = 0; s < config.subjects; ++s) {
        const std::string id = synth_subject_id(s, config.subjects);
        SubjectSeries series;
        series.subject_id = id;
        series.records.reserve(config.periods);
        const auto drift = drift_by_subject.find(s);
        for (int p = 0; p < config.periods; ++p) {
            // One draw per cell regardless of parameters, so drift specs
            // never perturb other subjects' streams.
            const std::uint64_t x = rng();
            const double u = (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
            double g = config.fulfilment_noise_sd * normal_quantile(u);
            if (drift != drift_by_subject.end() && p >= drift->second.changepoint)
                g += drift->second.magnitude;
            const double actual = std::max(0.0, config.base_target_hours * (1.0 + g));
            series.records.push_back(TimeRecord{id, config.start.plus(p), target,
                                                Hours::from_value(actual)});
        }
        cohort.subjects.emplace(id, std::move(series));
    }
    cohort.period_axis.reserve(config.periods);
    for (int p = 0; p < config.periods; ++p) cohort.period_axis.push_back(config.start.plus(p));
    return cohort;
}

}  // namespace rsdkpi

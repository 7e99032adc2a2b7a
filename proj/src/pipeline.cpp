#include "rsdkpi/pipeline.hpp"

#include <algorithm>

#include "rsdkpi/aggregate.hpp"
#include "rsdkpi/errors.hpp"
#include "rsdkpi/version.hpp"

namespace rsdkpi {

KpiReport run_analysis(const Cohort& cohort, const PipelineOptions& options) {
    validate(options.analysis);
    if (cohort.subjects.empty()) throw ValidationError("empty cohort: no records to analyze");
    const AnalysisConfig& cfg = options.analysis;

    ComputedSeries series;
    for (const auto& [subject, subject_series] : cohort.subjects) {
        series.rsd.emplace(subject, rsd_series(subject_series, cfg.variant));
        series.deltas.emplace(subject, delta_series(subject_series));
    }
    series.snapshots = cohort_snapshots(series.rsd);

    for (const auto& [subject, rsd] : series.rsd) {
        series.adjusted.emplace(subject, group_adjust(rsd, series.snapshots));
        auto vol = volatility_series(rsd, cfg.volatility_window);
        series.bsc.emplace(subject, bsc_trend_kpi(vol, cfg.bsc_window));
        series.volatility.emplace(subject, std::move(vol));

        std::vector<double> vals;
        vals.reserve(rsd.points.size());
        for (const auto& p : rsd.points) vals.push_back(p.rsd);
        series.class_basis.emplace(subject, mean_of(vals));

        series.alerts.emplace(subject,
                              cfg.detect_on == DetectOn::adjusted
                                  ? detect_shift(series.adjusted.at(subject), cfg.detector)
                                  : detect_shift(rsd, cfg.detector));
    }
    series.ranking = rank_subjects(series.class_basis);

    if (options.indicators) {
        auto by_subject = *options.indicators;
        for (const auto& [subject, indicators] : by_subject)
            if (!cohort.subjects.count(subject))
                throw ValidationError("indicators name unknown subject '" + subject + "'");
        // Fold the volatility KPI into every composite unless the file
        // already pins RSDVOL for that subject.
        for (const auto& [subject, vol] : series.volatility) {
            if (vol.points.empty()) continue;
            auto& list = by_subject[subject];
            const bool has_rsdvol =
                std::any_of(list.begin(), list.end(),
                            [](const CompositeIndicator& i) { return i.name == "RSDVOL"; });
            if (has_rsdvol) continue;
            std::vector<double> vals;
            vals.reserve(vol.points.size());
            for (const auto& p : vol.points) vals.push_back(p.volatility);
            list.push_back(CompositeIndicator{"RSDVOL", mean_of(vals), 1.0,
                                              Direction::lower_is_better});
        }
        for (auto it = by_subject.begin(); it != by_subject.end();)
            it = it->second.empty() ? by_subject.erase(it) : std::next(it);
        for (const auto& [subject, score] : composite_scores(by_subject))
            series.composite.emplace(subject, score);
    }

    ReportMeta meta;
    meta.dataset = options.dataset_label;
    meta.tool = kToolName;
    meta.version = kVersion;
    meta.params = cfg;
    meta.indicators_path = options.indicators_path;
    meta.seed = options.synth_seed;
    return build_report(cohort, series, meta);
}

KpiReport run_analysis(const std::vector<RawRecord>& rows, const PipelineOptions& options) {
    return run_analysis(aggregate(rows, options.analysis.grain), options);
}

}  // namespace rsdkpi

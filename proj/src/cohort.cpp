#include "rsdkpi/cohort.hpp"

#include <algorithm>

#include "rsdkpi/errors.hpp"

namespace rsdkpi {

std::vector<CohortSnapshot> cohort_snapshots(const std::map<std::string, RsdSeries>& by_subject) {
    if (by_subject.empty()) throw ValidationError("empty cohort");
    // Values per period, in subject order for a fixed accumulation order.
    std::map<Month, std::vector<double>> per_period;
    for (const auto& [subject, series] : by_subject)
        for (const auto& p : series.points) per_period[p.period].push_back(p.rsd);

    std::vector<CohortSnapshot> out;
    out.reserve(per_period.size());
    for (auto& [period, values] : per_period) {
        CohortSnapshot snap;
        snap.period = period;
        snap.subject_count = static_cast<int>(values.size());
        snap.mean_rsd = mean_of(values);
        std::sort(values.begin(), values.end());
        const std::size_t n = values.size();
        snap.median_rsd = n % 2 == 1 ? values[n / 2]
                                     : (values[n / 2 - 1] + values[n / 2]) / 2.0;
        out.push_back(snap);
    }
    return out;
}

std::vector<CohortSnapshot> cohort_snapshots(const Cohort& cohort, RsdVariant variant) {
    std::map<std::string, RsdSeries> by_subject;
    for (const auto& [subject, series] : cohort.subjects)
        by_subject.emplace(subject, rsd_series(series, variant));
    return cohort_snapshots(by_subject);
}

AdjustedRsdSeries group_adjust(const RsdSeries& rsd,
                               const std::vector<CohortSnapshot>& snapshots) {
    std::map<Month, double> median;
    for (const auto& s : snapshots) median.emplace(s.period, s.median_rsd);
    AdjustedRsdSeries out;
    out.subject_id = rsd.subject_id;
    out.points.reserve(rsd.points.size());
    for (const auto& p : rsd.points) {
        auto it = median.find(p.period);
        if (it == median.end())
            throw std::logic_error("no cohort snapshot for period " + p.period.str());
        out.points.push_back(AdjustedPoint{p.period, p.rsd - it->second});
    }
    return out;
}

std::vector<RankedSubject> rank_subjects(const std::map<std::string, double>& summary) {
    std::vector<RankedSubject> out;
    out.reserve(summary.size());
    for (const auto& [subject, value] : summary)
        out.push_back(RankedSubject{subject, value, 0});
    // The map is already lexicographic, so stable_sort keeps the tie-break.
    std::stable_sort(out.begin(), out.end(),
                     [](const RankedSubject& a, const RankedSubject& b) {
                         return a.value < b.value;
                     });
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i > 0 && out[i].value == out[i - 1].value)
            out[i].rank = out[i - 1].rank;
        else
            out[i].rank = static_cast<int>(i) + 1;
    }
    return out;
}

}  // namespace rsdkpi

#include "rsdkpi/aggregate.hpp"

#include <algorithm>
#include <set>

#include "rsdkpi/errors.hpp"

namespace rsdkpi {

Cohort aggregate(const std::vector<RawRecord>& rows, Grain grain) {
    std::set<std::pair<std::string, Date>> seen;
    std::set<std::pair<std::string, Date>> dupes;
    for (const auto& r : rows)
        if (!seen.emplace(r.subject_id, r.date).second) dupes.emplace(r.subject_id, r.date);
    if (!dupes.empty()) {
        std::string msg = "duplicate (subject, date) rows:";
        int listed = 0;
        for (const auto& [subject, date] : dupes) {
            if (listed == 8) {
                msg += " and " + std::to_string(dupes.size() - listed) + " more";
                break;
            }
            msg += " " + subject + " " + date.str() + ";";
            ++listed;
        }
        if (msg.back() == ';') msg.pop_back();
        throw ValidationError(msg);
    }

    std::map<std::pair<std::string, Month>, std::pair<Hours, Hours>> sums;
    for (const auto& r : rows) {
        auto& slot = sums[{r.subject_id, r.date.ym.bucket(grain)}];
        slot.first += r.target;
        slot.second += r.actual;
    }

    Cohort cohort;
    std::set<Month> axis;
    for (const auto& [key, hours] : sums) {
        const auto& [subject, period] = key;
        auto& series = cohort.subjects[subject];
        series.subject_id = subject;
        series.records.push_back(TimeRecord{subject, period, hours.first, hours.second});
        axis.insert(period);
    }
    cohort.period_axis.assign(axis.begin(), axis.end());
    return cohort;
}

}  // namespace rsdkpi

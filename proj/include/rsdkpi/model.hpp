#pragma once

#include <map>
#include <string>
#include <vector>

#include "rsdkpi/hours.hpp"
#include "rsdkpi/period.hpp"

namespace rsdkpi {

// One input row at daily granularity, pending aggregation.
struct RawRecord {
    std::string subject_id;
    Date date;
    Hours target;
    Hours actual;

    friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

// One subject-period observation. target is the agreed hours (x_tt),
// actual the recorded hours (x_at).
struct TimeRecord {
    std::string subject_id;
    Month period;
    Hours target;
    Hours actual;

    friend bool operator==(const TimeRecord&, const TimeRecord&) = default;
};

// Per-subject records, strictly ascending by period; gaps permitted.
struct SubjectSeries {
    std::string subject_id;
    std::vector<TimeRecord> records;

    friend bool operator==(const SubjectSeries&, const SubjectSeries&) = default;
};

// The comparable set. period_axis is the sorted union of member periods.
struct Cohort {
    std::map<std::string, SubjectSeries> subjects;
    std::vector<Month> period_axis;

    friend bool operator==(const Cohort&, const Cohort&) = default;
};

}  // namespace rsdkpi

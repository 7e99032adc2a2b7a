#pragma once

#include <map>
#include <string>
#include <vector>

#include "rsdkpi/model.hpp"
#include "rsdkpi/stats.hpp"

namespace rsdkpi {

struct CohortSnapshot {
    Month period;
    double median_rsd = 0.0;
    double mean_rsd = 0.0;
    int subject_count = 0;

    friend bool operator==(const CohortSnapshot&, const CohortSnapshot&) = default;
};

struct AdjustedPoint {
    Month period;
    double adjusted_rsd = 0.0;

    friend bool operator==(const AdjustedPoint&, const AdjustedPoint&) = default;
};

// Raw RSD minus the cohort median of the same period; group-wide effects
// cancel, individual anomalies remain.
struct AdjustedRsdSeries {
    std::string subject_id;
    std::vector<AdjustedPoint> points;

    friend bool operator==(const AdjustedRsdSeries&, const AdjustedRsdSeries&) = default;
};

struct RankedSubject {
    std::string subject_id;
    double value = 0.0;
    int rank = 0;

    friend bool operator==(const RankedSubject&, const RankedSubject&) = default;
};

// One snapshot per period with at least one subject present. Median uses the
// midpoint of the two central values for even counts. Empty input throws
// ValidationError.
std::vector<CohortSnapshot> cohort_snapshots(const std::map<std::string, RsdSeries>& by_subject);
std::vector<CohortSnapshot> cohort_snapshots(const Cohort& cohort, RsdVariant variant);

// Missing snapshot for a present period is an internal-consistency error
// (std::logic_error); it cannot happen when both come from the same cohort.
AdjustedRsdSeries group_adjust(const RsdSeries& rsd, const std::vector<CohortSnapshot>& snapshots);

// Ascending by value (lower summary = better), ties broken lexicographically
// and sharing the smaller rank (competition ranking).
std::vector<RankedSubject> rank_subjects(const std::map<std::string, double>& summary);

}  // namespace rsdkpi

#pragma once

#include <vector>

#include "rsdkpi/model.hpp"

namespace rsdkpi {

// Sums target and actual hours per (subject, calendar bucket). Buckets with
// no records stay absent; nothing is zero-filled. Duplicate (subject, date)
// rows are rejected with the offenders listed.
Cohort aggregate(const std::vector<RawRecord>& rows, Grain grain);

inline Cohort aggregate_monthly(const std::vector<RawRecord>& rows) {
    return aggregate(rows, Grain::month);
}

}  // namespace rsdkpi

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rsdkpi/model.hpp"

namespace testutil {

// Deterministic uniforms on top of the standard-pinned engine, so fixtures
// reproduce on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(uniform() * static_cast<double>(hi - lo + 1));
    }

private:
    std::mt19937_64 eng_;
};

inline rsdkpi::SubjectSeries make_series(const std::string& id,
                                         const std::vector<std::pair<double, double>>& hours,
                                         rsdkpi::Month start = {2016, 1}) {
    rsdkpi::SubjectSeries s;
    s.subject_id = id;
    for (std::size_t i = 0; i < hours.size(); ++i)
        s.records.push_back(rsdkpi::TimeRecord{id, start.plus(static_cast<int>(i)),
                                               rsdkpi::Hours::from_value(hours[i].first),
                                               rsdkpi::Hours::from_value(hours[i].second)});
    return s;
}

}  // namespace testutil

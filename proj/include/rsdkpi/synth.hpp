#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsdkpi/model.hpp"

namespace rsdkpi {

struct DriftSpec {
    int subject = 0;      // 0-based subject index
    int changepoint = 0;  // 0-based period index; drift applies from here on
    double magnitude = 0.0;  // added fulfilment-gap fraction, > 0

    friend bool operator==(const DriftSpec&, const DriftSpec&) = default;
};

struct SynthConfig {
    int subjects = 19;
    int periods = 70;
    std::uint64_t seed = 1;
    double base_target_hours = 160.0;
    double fulfilment_noise_sd = 0.05;
    std::vector<DriftSpec> drifts;
    Month start{2016, 1};
};

// "WO" + zero-padded 1-based index; width grows with the cohort size.
std::string synth_subject_id(int index, int subjects);

// Deterministic generator: target = base_target_hours every period, actual =
// target * (1 + g) clamped at zero, where g = fulfilment_noise_sd * z plus
// the drift magnitude from the changepoint on. z comes from one
// mt19937_64 draw per (subject, period) cell in subject-major order, mapped
// to (0,1) as ((x >> 11) + 0.5) * 2^-53 and through the AS241 inverse normal
// CDF. Identical configs produce bit-identical cohorts on any platform.
Cohort generate(const SynthConfig& config);

}  // namespace rsdkpi

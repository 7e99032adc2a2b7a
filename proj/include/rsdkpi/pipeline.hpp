#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsdkpi/config.hpp"
#include "rsdkpi/model.hpp"
#include "rsdkpi/report.hpp"

namespace rsdkpi {

struct PipelineOptions {
    AnalysisConfig analysis;
    std::optional<std::map<std::string, std::vector<CompositeIndicator>>> indicators;
    std::string dataset_label = "<unnamed>";
    std::optional<std::string> indicators_path;
    std::optional<std::uint64_t> synth_seed;
};

// ingestion -> stats -> cohort -> detect -> report, in one call.
//
// Per subject: raw RSD series (chosen variant), positional deltas,
// volatility of the raw RSD, cohort-median-adjusted series, shift detection
// on the series picked by detect_on, classification and ranking on the mean
// raw RSD over the whole window, BSC reduction on the volatility series.
// When indicators are supplied, an RSDVOL indicator (mean volatility, lower
// is better, weight 1) is appended for every subject that lacks one before
// composites are computed.
KpiReport run_analysis(const Cohort& cohort, const PipelineOptions& options);
KpiReport run_analysis(const std::vector<RawRecord>& rows, const PipelineOptions& options);

}  // namespace rsdkpi

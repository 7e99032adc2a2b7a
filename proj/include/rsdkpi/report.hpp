#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsdkpi/cohort.hpp"
#include "rsdkpi/config.hpp"
#include "rsdkpi/detect.hpp"
#include "rsdkpi/model.hpp"
#include "rsdkpi/stats.hpp"

namespace rsdkpi {

struct SeriesSummary {
    int count = 0;
    std::optional<double> mean;
    std::optional<double> min;
    std::optional<double> max;
    std::optional<double> last;

    friend bool operator==(const SeriesSummary&, const SeriesSummary&) = default;
};

SeriesSummary summarize(const std::vector<double>& values);

struct DeltaExtremes {
    int count = 0;
    std::optional<double> delta_target_min;
    std::optional<double> delta_target_max;
    std::optional<double> delta_actual_min;
    std::optional<double> delta_actual_max;

    friend bool operator==(const DeltaExtremes&, const DeltaExtremes&) = default;
};

struct SubjectReport {
    std::string subject_id;
    RsdSeries rsd;
    SeriesSummary rsd_summary;
    VolatilitySeries volatility;
    SeriesSummary volatility_summary;
    std::optional<double> volatility_trend;
    AdjustedRsdSeries adjusted;
    SeriesSummary adjusted_summary;
    std::vector<DeltaPoint> deltas;
    DeltaExtremes delta_extremes;
    PerformanceClass performance = PerformanceClass::Stable;
    bool detection_evaluated = false;
    std::vector<ShiftAlert> alerts;
    std::optional<double> bsc_reduction;
    std::optional<double> composite;

    friend bool operator==(const SubjectReport&, const SubjectReport&) = default;
};

struct ReportMeta {
    std::string dataset;
    std::string tool;
    std::string version;
    AnalysisConfig params;
    std::optional<std::string> indicators_path;
    std::optional<std::uint64_t> seed;  // known only for in-process synthetic runs

    friend bool operator==(const ReportMeta&, const ReportMeta&) = default;
};

struct KpiReport {
    ReportMeta meta;
    std::vector<SubjectReport> subjects;  // sorted by subject_id
    std::vector<CohortSnapshot> snapshots;
    std::vector<RankedSubject> ranking;

    friend bool operator==(const KpiReport&, const KpiReport&) = default;
};

// Everything the pipeline computed, keyed by subject. Key sets must all
// equal the cohort's subject set (std::logic_error otherwise). composite may
// be empty when no indicators were supplied.
struct ComputedSeries {
    std::map<std::string, RsdSeries> rsd;
    std::map<std::string, VolatilitySeries> volatility;
    std::map<std::string, AdjustedRsdSeries> adjusted;
    std::map<std::string, std::vector<DeltaPoint>> deltas;
    std::map<std::string, std::optional<std::vector<ShiftAlert>>> alerts;
    std::map<std::string, double> class_basis;
    std::map<std::string, std::optional<double>> bsc;
    std::map<std::string, std::optional<double>> composite;
    std::vector<CohortSnapshot> snapshots;
    std::vector<RankedSubject> ranking;
};

KpiReport build_report(const Cohort& cohort, const ComputedSeries& series,
                       const ReportMeta& meta);

// Single JSON document, stable key order, shortest round-trip numbers.
// Emitting the same report twice yields identical bytes.
std::string emit_json(const KpiReport& report);

// One CSV per series kind: rsd.csv, volatility.csv, adjusted.csv,
// alerts.csv, ranking.csv, snapshots.csv, deltas.csv (filename -> bytes).
std::map<std::string, std::string> emit_csv_bundle(const KpiReport& report);

// Inverse of emit_json; parse_report_json(emit_json(r)) == r.
KpiReport parse_report_json(const std::string& text);

// Shortest decimal form that parses back to the same double ("373.75",
// "-416", "0.1").
std::string format_double(double v);

}  // namespace rsdkpi

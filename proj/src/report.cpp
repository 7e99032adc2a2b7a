#include "rsdkpi/report.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include <json.hpp>

#include "rsdkpi/errors.hpp"
#include "rsdkpi/version.hpp"

namespace rsdkpi {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json json_opt(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

std::optional<double> opt_from(const ordered_json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

ordered_json summary_json(const SeriesSummary& s) {
    ordered_json j;
    j["count"] = s.count;
    j["mean"] = json_opt(s.mean);
    j["min"] = json_opt(s.min);
    j["max"] = json_opt(s.max);
    j["last"] = json_opt(s.last);
    return j;
}

SeriesSummary summary_from(const ordered_json& j) {
    SeriesSummary s;
    s.count = j.at("count").get<int>();
    s.mean = opt_from(j.at("mean"));
    s.min = opt_from(j.at("min"));
    s.max = opt_from(j.at("max"));
    s.last = opt_from(j.at("last"));
    return s;
}

template <typename Keys>
void require_keys(const std::map<std::string, SubjectSeries>& subjects, const Keys& map,
                  const char* what) {
    if (map.size() != subjects.size())
        throw std::logic_error(std::string("cross-input subject mismatch in ") + what);
    auto it = subjects.begin();
    for (const auto& [key, value] : map) {
        if (key != it->first)
            throw std::logic_error(std::string("cross-input subject mismatch in ") + what);
        ++it;
    }
}

void append_csv_number(std::string& out, double v) {
    out += format_double(v);
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

SeriesSummary summarize(const std::vector<double>& values) {
    SeriesSummary s;
    s.count = static_cast<int>(values.size());
    if (values.empty()) return s;
    s.mean = mean_of(values);
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    s.last = values.back();
    return s;
}

KpiReport build_report(const Cohort& cohort, const ComputedSeries& series,
                       const ReportMeta& meta) {
    if (cohort.subjects.empty()) throw ValidationError("empty cohort");
    require_keys(cohort.subjects, series.rsd, "rsd");
    require_keys(cohort.subjects, series.volatility, "volatility");
    require_keys(cohort.subjects, series.adjusted, "adjusted");
    require_keys(cohort.subjects, series.deltas, "deltas");
    require_keys(cohort.subjects, series.alerts, "alerts");
    require_keys(cohort.subjects, series.class_basis, "class basis");
    require_keys(cohort.subjects, series.bsc, "bsc");
    for (const auto& [subject, value] : series.composite)
        if (!cohort.subjects.count(subject))
            throw std::logic_error("cross-input subject mismatch in composite");
    if (series.ranking.size() != cohort.subjects.size())
        throw std::logic_error("cross-input subject mismatch in ranking");

    KpiReport report;
    report.meta = meta;
    report.snapshots = series.snapshots;
    report.ranking = series.ranking;
    report.subjects.reserve(cohort.subjects.size());

    for (const auto& [subject, _] : cohort.subjects) {
        SubjectReport block;
        block.subject_id = subject;
        block.rsd = series.rsd.at(subject);
        block.volatility = series.volatility.at(subject);
        block.adjusted = series.adjusted.at(subject);
        block.deltas = series.deltas.at(subject);

        std::vector<double> vals;
        for (const auto& p : block.rsd.points) vals.push_back(p.rsd);
        block.rsd_summary = summarize(vals);
        vals.clear();
        for (const auto& p : block.volatility.points) vals.push_back(p.volatility);
        block.volatility_summary = summarize(vals);
        block.volatility_trend =
            vals.size() < 2 ? std::nullopt
                            : trend_slope(vals, static_cast<int>(vals.size()));
        vals.clear();
        for (const auto& p : block.adjusted.points) vals.push_back(p.adjusted_rsd);
        block.adjusted_summary = summarize(vals);

        block.delta_extremes.count = static_cast<int>(block.deltas.size());
        if (!block.deltas.empty()) {
            double tmin = block.deltas.front().delta_target.value(), tmax = tmin;
            double amin = block.deltas.front().delta_actual.value(), amax = amin;
            for (const auto& d : block.deltas) {
                tmin = std::min(tmin, d.delta_target.value());
                tmax = std::max(tmax, d.delta_target.value());
                amin = std::min(amin, d.delta_actual.value());
                amax = std::max(amax, d.delta_actual.value());
            }
            block.delta_extremes.delta_target_min = tmin;
            block.delta_extremes.delta_target_max = tmax;
            block.delta_extremes.delta_actual_min = amin;
            block.delta_extremes.delta_actual_max = amax;
        }

        block.performance = classify(series.class_basis.at(subject), meta.params.classifier);
        const auto& alerts = series.alerts.at(subject);
        block.detection_evaluated = alerts.has_value();
        if (alerts) block.alerts = *alerts;
        block.bsc_reduction = series.bsc.at(subject);
        auto comp = series.composite.find(subject);
        if (comp != series.composite.end()) block.composite = comp->second;

        report.subjects.push_back(std::move(block));
    }
    return report;
}

std::string emit_json(const KpiReport& report) {
    ordered_json doc;
    ordered_json& meta = doc["meta"];
    meta["tool"] = report.meta.tool;
    meta["version"] = report.meta.version;
    meta["dataset"] = report.meta.dataset;
    ordered_json& params = meta["parameters"];
    const AnalysisConfig& cfg = report.meta.params;
    params["grain"] = std::string(to_string(cfg.grain));
    params["rsd_variant"] = std::string(to_string(cfg.variant));
    params["volatility_window"] = cfg.volatility_window;
    params["baseline_window"] = cfg.detector.baseline_window;
    params["test_window"] = cfg.detector.test_window;
    params["k_sigmas"] = cfg.detector.k_sigmas;
    params["min_consecutive"] = cfg.detector.min_consecutive;
    params["detect_on"] = std::string(to_string(cfg.detect_on));
    params["stable_threshold"] = cfg.classifier.stable_threshold;
    params["warning_band"] = cfg.classifier.warning_band;
    params["class_basis"] = "mean_rsd";
    params["bsc_window"] = cfg.bsc_window;
    params["indicators"] =
        report.meta.indicators_path ? ordered_json(*report.meta.indicators_path)
                                    : ordered_json(nullptr);
    params["seed"] = report.meta.seed ? ordered_json(*report.meta.seed) : ordered_json(nullptr);

    doc["subjects"] = ordered_json::array();
    for (const auto& s : report.subjects) {
        ordered_json block;
        block["subject_id"] = s.subject_id;
        block["class"] = std::string(to_string(s.performance));

        ordered_json rsd;
        rsd["series"] = ordered_json::array();
        for (const auto& p : s.rsd.points)
            rsd["series"].push_back({{"period", p.period.str()}, {"value", p.rsd}});
        rsd["summary"] = summary_json(s.rsd_summary);
        block["rsd"] = std::move(rsd);

        ordered_json vol;
        vol["window"] = s.volatility.window;
        vol["series"] = ordered_json::array();
        for (const auto& p : s.volatility.points)
            vol["series"].push_back({{"period", p.period.str()}, {"value", p.volatility}});
        vol["summary"] = summary_json(s.volatility_summary);
        vol["trend_slope"] = json_opt(s.volatility_trend);
        block["volatility"] = std::move(vol);

        ordered_json adj;
        adj["series"] = ordered_json::array();
        for (const auto& p : s.adjusted.points)
            adj["series"].push_back({{"period", p.period.str()}, {"value", p.adjusted_rsd}});
        adj["summary"] = summary_json(s.adjusted_summary);
        block["adjusted"] = std::move(adj);

        ordered_json deltas;
        deltas["series"] = ordered_json::array();
        for (const auto& d : s.deltas)
            deltas["series"].push_back({{"period", d.period.str()},
                                        {"delta_target", d.delta_target.value()},
                                        {"delta_actual", d.delta_actual.value()}});
        ordered_json ext;
        ext["count"] = s.delta_extremes.count;
        ext["delta_target_min"] = json_opt(s.delta_extremes.delta_target_min);
        ext["delta_target_max"] = json_opt(s.delta_extremes.delta_target_max);
        ext["delta_actual_min"] = json_opt(s.delta_extremes.delta_actual_min);
        ext["delta_actual_max"] = json_opt(s.delta_extremes.delta_actual_max);
        deltas["extremes"] = std::move(ext);
        block["deltas"] = std::move(deltas);

        block["detection"] = s.detection_evaluated ? "evaluated" : "insufficient_data";
        block["alerts"] = ordered_json::array();
        for (const auto& a : s.alerts)
            block["alerts"].push_back({{"fired_period", a.fired_period.str()},
                                       {"baseline_mean", a.baseline_mean},
                                       {"baseline_sd", a.baseline_sd},
                                       {"observed_mean", a.observed_mean},
                                       {"magnitude_sigmas", a.magnitude_sigmas}});
        block["bsc_reduction"] = json_opt(s.bsc_reduction);
        block["composite"] = json_opt(s.composite);
        doc["subjects"].push_back(std::move(block));
    }

    ordered_json& cohort = doc["cohort"];
    cohort["snapshots"] = ordered_json::array();
    for (const auto& snap : report.snapshots)
        cohort["snapshots"].push_back({{"period", snap.period.str()},
                                       {"median_rsd", snap.median_rsd},
                                       {"mean_rsd", snap.mean_rsd},
                                       {"subject_count", snap.subject_count}});
    cohort["ranking"] = ordered_json::array();
    for (const auto& r : report.ranking)
        cohort["ranking"].push_back(
            {{"subject_id", r.subject_id}, {"value", r.value}, {"rank", r.rank}});

    return doc.dump(2) + "\n";
}

namespace {

KpiReport report_from_doc(const ordered_json& doc) {
    KpiReport report;
    const auto& meta = doc.at("meta");
    report.meta.tool = meta.at("tool").get<std::string>();
    report.meta.version = meta.at("version").get<std::string>();
    report.meta.dataset = meta.at("dataset").get<std::string>();
    const auto& params = meta.at("parameters");
    AnalysisConfig& cfg = report.meta.params;
    cfg.grain = grain_from_string(params.at("grain").get<std::string>());
    cfg.variant = rsd_variant_from_string(params.at("rsd_variant").get<std::string>());
    cfg.volatility_window = params.at("volatility_window").get<int>();
    cfg.detector.baseline_window = params.at("baseline_window").get<int>();
    cfg.detector.test_window = params.at("test_window").get<int>();
    cfg.detector.k_sigmas = params.at("k_sigmas").get<double>();
    cfg.detector.min_consecutive = params.at("min_consecutive").get<int>();
    cfg.detect_on = detect_on_from_string(params.at("detect_on").get<std::string>());
    cfg.classifier.stable_threshold = params.at("stable_threshold").get<double>();
    cfg.classifier.warning_band = params.at("warning_band").get<double>();
    cfg.bsc_window = params.at("bsc_window").get<int>();
    if (!params.at("indicators").is_null())
        report.meta.indicators_path = params.at("indicators").get<std::string>();
    if (!params.at("seed").is_null())
        report.meta.seed = params.at("seed").get<std::uint64_t>();

    for (const auto& block : doc.at("subjects")) {
        SubjectReport s;
        s.subject_id = block.at("subject_id").get<std::string>();
        s.performance = performance_class_from_string(block.at("class").get<std::string>());

        s.rsd.subject_id = s.subject_id;
        for (const auto& p : block.at("rsd").at("series"))
            s.rsd.points.push_back(RsdPoint{Month::parse(p.at("period").get<std::string>()),
                                            p.at("value").get<double>()});
        s.rsd_summary = summary_from(block.at("rsd").at("summary"));

        s.volatility.subject_id = s.subject_id;
        s.volatility.window = block.at("volatility").at("window").get<int>();
        for (const auto& p : block.at("volatility").at("series"))
            s.volatility.points.push_back(
                VolatilityPoint{Month::parse(p.at("period").get<std::string>()),
                                p.at("value").get<double>()});
        s.volatility_summary = summary_from(block.at("volatility").at("summary"));
        s.volatility_trend = opt_from(block.at("volatility").at("trend_slope"));

        s.adjusted.subject_id = s.subject_id;
        for (const auto& p : block.at("adjusted").at("series"))
            s.adjusted.points.push_back(
                AdjustedPoint{Month::parse(p.at("period").get<std::string>()),
                              p.at("value").get<double>()});
        s.adjusted_summary = summary_from(block.at("adjusted").at("summary"));

        for (const auto& d : block.at("deltas").at("series"))
            s.deltas.push_back(DeltaPoint{Month::parse(d.at("period").get<std::string>()),
                                          Hours::from_value(d.at("delta_target").get<double>()),
                                          Hours::from_value(d.at("delta_actual").get<double>())});
        const auto& ext = block.at("deltas").at("extremes");
        s.delta_extremes.count = ext.at("count").get<int>();
        s.delta_extremes.delta_target_min = opt_from(ext.at("delta_target_min"));
        s.delta_extremes.delta_target_max = opt_from(ext.at("delta_target_max"));
        s.delta_extremes.delta_actual_min = opt_from(ext.at("delta_actual_min"));
        s.delta_extremes.delta_actual_max = opt_from(ext.at("delta_actual_max"));

        s.detection_evaluated = block.at("detection").get<std::string>() == "evaluated";
        for (const auto& a : block.at("alerts"))
            s.alerts.push_back(
                ShiftAlert{s.subject_id,
                           Month::parse(a.at("fired_period").get<std::string>()),
                           a.at("baseline_mean").get<double>(),
                           a.at("baseline_sd").get<double>(),
                           a.at("observed_mean").get<double>(),
                           a.at("magnitude_sigmas").get<double>()});
        s.bsc_reduction = opt_from(block.at("bsc_reduction"));
        s.composite = opt_from(block.at("composite"));
        report.subjects.push_back(std::move(s));
    }

    for (const auto& snap : doc.at("cohort").at("snapshots"))
        report.snapshots.push_back(
            CohortSnapshot{Month::parse(snap.at("period").get<std::string>()),
                           snap.at("median_rsd").get<double>(),
                           snap.at("mean_rsd").get<double>(),
                           snap.at("subject_count").get<int>()});
    for (const auto& r : doc.at("cohort").at("ranking"))
        report.ranking.push_back(RankedSubject{r.at("subject_id").get<std::string>(),
                                               r.at("value").get<double>(),
                                               r.at("rank").get<int>()});
    return report;
}

}  // namespace

KpiReport parse_report_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("report parse error: ") + e.what());
    }
    try {
        return report_from_doc(doc);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed report: ") + e.what());
    }
}

std::map<std::string, std::string> emit_csv_bundle(const KpiReport& report) {
    std::map<std::string, std::string> files;

    std::string rsd = "subject_id,period,rsd\n";
    std::string vol = "subject_id,period,volatility\n";
    std::string adj = "subject_id,period,adjusted_rsd\n";
    std::string deltas = "subject_id,period,delta_target,delta_actual\n";
    std::string alerts =
        "subject_id,fired_period,baseline_mean,baseline_sd,observed_mean,magnitude_sigmas\n";
    for (const auto& s : report.subjects) {
        for (const auto& p : s.rsd.points) {
            rsd += s.subject_id + "," + p.period.str() + ",";
            append_csv_number(rsd, p.rsd);
            rsd += '\n';
        }
        for (const auto& p : s.volatility.points) {
            vol += s.subject_id + "," + p.period.str() + ",";
            append_csv_number(vol, p.volatility);
            vol += '\n';
        }
        for (const auto& p : s.adjusted.points) {
            adj += s.subject_id + "," + p.period.str() + ",";
            append_csv_number(adj, p.adjusted_rsd);
            adj += '\n';
        }
        for (const auto& d : s.deltas) {
            deltas += s.subject_id + "," + d.period.str() + ",";
            append_csv_number(deltas, d.delta_target.value());
            deltas += ',';
            append_csv_number(deltas, d.delta_actual.value());
            deltas += '\n';
        }
        for (const auto& a : s.alerts) {
            alerts += s.subject_id + "," + a.fired_period.str() + ",";
            append_csv_number(alerts, a.baseline_mean);
            alerts += ',';
            append_csv_number(alerts, a.baseline_sd);
            alerts += ',';
            append_csv_number(alerts, a.observed_mean);
            alerts += ',';
            append_csv_number(alerts, a.magnitude_sigmas);
            alerts += '\n';
        }
    }

    std::string snapshots = "period,median_rsd,mean_rsd,subject_count\n";
    for (const auto& snap : report.snapshots) {
        snapshots += snap.period.str() + ",";
        append_csv_number(snapshots, snap.median_rsd);
        snapshots += ',';
        append_csv_number(snapshots, snap.mean_rsd);
        snapshots += ',' + std::to_string(snap.subject_count);
        snapshots += '\n';
    }

    std::string ranking = "subject_id,value,rank\n";
    for (const auto& r : report.ranking) {
        ranking += r.subject_id + ",";
        append_csv_number(ranking, r.value);
        ranking += ',' + std::to_string(r.rank);
        ranking += '\n';
    }

    files["rsd.csv"] = std::move(rsd);
    files["volatility.csv"] = std::move(vol);
    files["adjusted.csv"] = std::move(adj);
    files["deltas.csv"] = std::move(deltas);
    files["alerts.csv"] = std::move(alerts);
    files["snapshots.csv"] = std::move(snapshots);
    files["ranking.csv"] = std::move(ranking);
    return files;
}

}  // namespace rsdkpi

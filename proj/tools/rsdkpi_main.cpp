#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsdkpi/errors.hpp"
#include "rsdkpi/ingest.hpp"
#include "rsdkpi/pipeline.hpp"
#include "rsdkpi/report.hpp"
#include "rsdkpi/synth.hpp"
#include "rsdkpi/version.hpp"

namespace {

namespace fs = std::filesystem;
using namespace rsdkpi;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path + "'");
    return buf.str();
}

void write_output(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << bytes;
    if (!out) throw IoError("failed writing '" + path + "'");
}

struct AnalysisFlags {
    std::string input;
    std::string format = "csv";
    std::string grain = "month";
    std::string variant = "paper";
    int volatility_window = 6;
    int baseline_window = 12;
    int test_window = 3;
    double k_sigmas = 2.0;
    int min_consecutive = 2;
    std::string detect_on = "adjusted";
    double stable_threshold = 0.10;
    double warning_band = 0.05;
    int bsc_window = 6;
    std::string config_path;
};

// Applies a `key = value` config file to a parsed subcommand. Keys are flag
// names without the leading dashes; flags given on the command line keep
// their explicit value. Option validators run exactly as they would for a
// command-line value.
void apply_config_file(CLI::App* cmd, const std::string& path) {
    if (path.empty()) return;
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigINI().from_file(path);
    } catch (const CLI::FileError& e) {
        throw ConfigError(std::string("config file: ") + e.what());
    }
    for (const auto& item : items) {
        if (!item.parents.empty() || item.name == "++" || item.name == "--")
            throw ConfigError("config file sections are not supported ('" + item.fullname() +
                              "')");
        if (item.name == "config")
            throw ConfigError("a config file cannot set --config");
        CLI::Option* op = cmd->get_option_no_throw("--" + item.name);
        if (op == nullptr)
            throw ConfigError("unknown config key '" + item.name + "'");
        if (op->count() > 0) continue;  // explicit flag wins
        try {
            for (const auto& input : item.inputs) op->add_result(input);
            op->run_callback();
        } catch (const CLI::ParseError& e) {
            throw ConfigError("config file key '" + item.name + "': " + e.what());
        }
    }
}

void add_analysis_flags(CLI::App* cmd, AnalysisFlags& f) {
    cmd->add_option("--input", f.input, "records file, or - for stdin");
    cmd->add_option("--format", f.format, "input format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--grain", f.grain, "aggregation grain")
        ->check(CLI::IsMember({"month", "quarter", "year"}))
        ->capture_default_str();
    cmd->add_option("--rsd-variant", f.variant, "rsd formula variant")
        ->check(CLI::IsMember({"paper", "population"}))
        ->capture_default_str();
    cmd->add_option("--volatility-window", f.volatility_window,
                    "trailing window for rsd volatility")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    cmd->add_option("--baseline-window", f.baseline_window, "detector baseline window")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    cmd->add_option("--test-window", f.test_window, "detector test window")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    cmd->add_option("--k-sigmas", f.k_sigmas, "detector excess threshold in baseline sd")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--min-consecutive", f.min_consecutive,
                    "test windows the excess must persist for")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    cmd->add_option("--detect-on", f.detect_on, "series the detector runs on")
        ->check(CLI::IsMember({"raw", "adjusted"}))
        ->capture_default_str();
    cmd->add_option("--stable-threshold", f.stable_threshold, "stability benchmark")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--warning-band", f.warning_band, "warning band above the benchmark")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--bsc-window", f.bsc_window, "first/last sub-window for the BSC KPI")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    cmd->add_option("--config", f.config_path, "key = value file supplying any flag");
}

AnalysisConfig to_config(const AnalysisFlags& f) {
    AnalysisConfig cfg;
    cfg.grain = grain_from_string(f.grain);
    cfg.variant = rsd_variant_from_string(f.variant);
    cfg.volatility_window = f.volatility_window;
    cfg.detector.baseline_window = f.baseline_window;
    cfg.detector.test_window = f.test_window;
    cfg.detector.k_sigmas = f.k_sigmas;
    cfg.detector.min_consecutive = f.min_consecutive;
    cfg.detect_on = detect_on_from_string(f.detect_on);
    cfg.classifier.stable_threshold = f.stable_threshold;
    cfg.classifier.warning_band = f.warning_band;
    cfg.bsc_window = f.bsc_window;
    validate(cfg);
    return cfg;
}

KpiReport analyze_to_report(const AnalysisFlags& flags, const std::string& indicators_path) {
    if (flags.input.empty()) throw ConfigError("--input is required");
    PipelineOptions options;
    options.analysis = to_config(flags);
    options.dataset_label = flags.input == "-" ? "<stdin>" : flags.input;
    if (!indicators_path.empty()) {
        options.indicators = parse_indicators(read_input(indicators_path));
        options.indicators_path = indicators_path;
    }
    const auto rows = parse_records(read_input(flags.input),
                                    record_format_from_string(flags.format));
    return run_analysis(rows, options);
}

int run_analyze(const AnalysisFlags& flags, const std::string& indicators_path,
                const std::string& output_format, const std::string& out) {
    const KpiReport report = analyze_to_report(flags, indicators_path);
    if (output_format == "json") {
        write_output(out, emit_json(report));
        return 0;
    }
    if (out.empty())
        throw ConfigError("--out is required for csv_bundle output");
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw IoError("cannot create directory '" + out + "'");
    for (const auto& [name, bytes] : emit_csv_bundle(report))
        write_output((fs::path(out) / name).string(), bytes);
    return 0;
}

int run_detect(const AnalysisFlags& flags, const std::string& output_format,
               const std::string& out) {
    const KpiReport report = analyze_to_report(flags, "");
    if (output_format == "csv") {
        std::string bytes = emit_csv_bundle(report).at("alerts.csv");
        write_output(out, bytes);
        return 0;
    }
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& s : report.subjects)
        for (const auto& a : s.alerts)
            doc.push_back({{"subject_id", a.subject_id},
                           {"fired_period", a.fired_period.str()},
                           {"baseline_mean", a.baseline_mean},
                           {"baseline_sd", a.baseline_sd},
                           {"observed_mean", a.observed_mean},
                           {"magnitude_sigmas", a.magnitude_sigmas}});
    write_output(out, doc.dump(2) + "\n");
    return 0;
}

DriftSpec parse_drift_spec(const std::string& text) {
    const auto at = text.find('@');
    const auto colon = text.find(':', at == std::string::npos ? 0 : at);
    if (at == std::string::npos || colon == std::string::npos)
        throw ConfigError("malformed drift spec '" + text + "', expected SUBJECT@PERIOD:MAGNITUDE");
    DriftSpec spec;
    try {
        std::size_t used = 0;
        spec.subject = std::stoi(text.substr(0, at), &used);
        if (used != at) throw std::invalid_argument("");
        const std::string cp = text.substr(at + 1, colon - at - 1);
        spec.changepoint = std::stoi(cp, &used);
        if (used != cp.size()) throw std::invalid_argument("");
        const std::string mag = text.substr(colon + 1);
        spec.magnitude = std::stod(mag, &used);
        if (used != mag.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ConfigError("malformed drift spec '" + text + "', expected SUBJECT@PERIOD:MAGNITUDE");
    }
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"target-fulfilment RSD volatility KPIs"};
    app.require_subcommand(1);

    AnalysisFlags analyze_flags;
    std::string analyze_indicators;
    std::string analyze_output_format = "json";
    std::string analyze_out;
    CLI::App* analyze = app.add_subcommand("analyze", "full KPI report from a records file");
    add_analysis_flags(analyze, analyze_flags);
    analyze->add_option("--indicators", analyze_indicators,
                        "per-subject indicator file for the composite KPI");
    analyze->add_option("--output-format", analyze_output_format, "report format")
        ->check(CLI::IsMember({"json", "csv_bundle"}))
        ->capture_default_str();
    analyze->add_option("--out", analyze_out,
                        "output file (json) or directory (csv_bundle); stdout by default");

    AnalysisFlags detect_flags;
    std::string detect_output_format = "json";
    std::string detect_out;
    CLI::App* detect = app.add_subcommand("detect", "analyze, restricted to shift alerts");
    add_analysis_flags(detect, detect_flags);
    detect->add_option("--output-format", detect_output_format, "alerts format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    detect->add_option("--out", detect_out, "output file; stdout by default");

    SynthConfig synth_cfg;
    std::vector<std::string> drift_specs;
    std::string synth_start = "2016-01";
    std::string synth_format = "csv";
    std::string synth_out;
    CLI::App* synth = app.add_subcommand("synth", "deterministic synthetic cohort");
    synth->add_option("--subjects", synth_cfg.subjects, "cohort size")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    synth->add_option("--periods", synth_cfg.periods, "months per subject")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    synth->add_option("--seed", synth_cfg.seed, "PRNG seed")->capture_default_str();
    synth->add_option("--base-target-hours", synth_cfg.base_target_hours,
                      "target hours per period")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth->add_option("--noise-sd", synth_cfg.fulfilment_noise_sd,
                      "sd of the fulfilment gap fraction")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    synth->add_option("--drift", drift_specs,
                      "SUBJECT@PERIOD:MAGNITUDE upward drift (repeatable, 0-based indices)");
    synth->add_option("--start-period", synth_start, "first calendar month")
        ->capture_default_str();
    synth->add_option("--format", synth_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    synth->add_option("--out", synth_out, "output file; stdout by default");
    std::string synth_config_path;
    synth->add_option("--config", synth_config_path, "key = value file supplying any flag");

    CLI::App* version = app.add_subcommand("version", "print tool name and version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error[config]: " << e.what() << "\n";
        return 2;
    }

    try {
        if (version->parsed()) {
            std::cout << kToolName << " " << kVersion << "\n";
            return 0;
        }
        if (analyze->parsed()) {
            apply_config_file(analyze, analyze_flags.config_path);
            return run_analyze(analyze_flags, analyze_indicators, analyze_output_format,
                               analyze_out);
        }
        if (detect->parsed()) {
            apply_config_file(detect, detect_flags.config_path);
            return run_detect(detect_flags, detect_output_format, detect_out);
        }
        if (synth->parsed()) {
            apply_config_file(synth, synth_config_path);
            try {
                synth_cfg.start = Month::parse(synth_start);
            } catch (const ValidationError& e) {
                throw ConfigError(e.what());
            }
            for (const auto& spec : drift_specs)
                synth_cfg.drifts.push_back(parse_drift_spec(spec));
            const Cohort cohort = generate(synth_cfg);
            std::vector<RawRecord> rows;
            for (const auto& [subject, series] : cohort.subjects)
                for (const auto& r : series.records)
                    rows.push_back(RawRecord{r.subject_id, Date{r.period, 1}, r.target,
                                             r.actual});
            write_output(synth_out,
                         serialize_records(rows, record_format_from_string(synth_format)));
            return 0;
        }
    } catch (const ValidationError& e) {
        std::cerr << "error[validation]: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "error[config]: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error[io]: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

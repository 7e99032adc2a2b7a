#include "rsdkpi/ingest.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "rsdkpi/errors.hpp"

namespace rsdkpi {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kRecordHeader = "subject_id,date,target_hours,actual_hours";
constexpr const char* kIndicatorHeader = "subject_id,name,value,direction,weight";

double parse_double_field(std::string_view text, const std::string& what,
                          const std::string& where) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() ||
        !std::isfinite(v))
        throw ValidationError("malformed " + what + " at " + where + ": '" +
                              std::string(text) + "'");
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

// Iterates lines without copying; yields (1-based line number, content).
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t pos = 0;
    int line_no = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = nl == std::string_view::npos ? text.substr(pos)
                                                             : text.substr(pos, nl - pos);
        ++line_no;
        fn(line_no, line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
}

Hours parse_hours_field(std::string_view text, const std::string& what,
                        const std::string& where) {
    Hours h;
    try {
        h = Hours::parse(trim(text));
    } catch (const ValidationError&) {
        throw ValidationError("malformed " + what + " at " + where + ": '" +
                              std::string(trim(text)) + "'");
    }
    if (h.negative()) throw ValidationError("negative " + what + " at " + where);
    return h;
}

std::vector<RawRecord> parse_csv_records(const std::string& text) {
    std::vector<RawRecord> out;
    bool header_seen = false;
    for_each_line(text, [&](int line_no, std::string_view line) {
        if (!header_seen) {
            std::string_view header = line;
            if (!header.empty() && header.back() == '\r') header.remove_suffix(1);
            if (header != kRecordHeader)
                throw ValidationError("line 1: expected header '" +
                                      std::string(kRecordHeader) + "'");
            header_seen = true;
            return;
        }
        const std::string where = "line " + std::to_string(line_no);
        std::string_view row = line;
        if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
        auto fields = split_fields(row);
        if (fields.size() != 4)
            throw ValidationError("malformed row at " + where + ": expected 4 fields, got " +
                                  std::to_string(fields.size()));
        RawRecord rec;
        rec.subject_id = std::string(trim(fields[0]));
        if (rec.subject_id.empty())
            throw ValidationError("empty subject_id at " + where);
        try {
            rec.date = Date::parse(trim(fields[1]));
        } catch (const ValidationError& e) {
            throw ValidationError(std::string(e.what()) + " at " + where);
        }
        rec.target = parse_hours_field(fields[2], "target_hours", where);
        rec.actual = parse_hours_field(fields[3], "actual_hours", where);
        out.push_back(std::move(rec));
    });
    return out;
}

std::vector<RawRecord> parse_json_records(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("json parse error: ") + e.what());
    }
    if (!doc.is_array()) throw ValidationError("json input must be an array of records");
    std::vector<RawRecord> out;
    int index = 0;
    for (const auto& item : doc) {
        ++index;
        const std::string where = "record " + std::to_string(index);
        if (!item.is_object()) throw ValidationError(where + " is not an object");
        for (const char* key : {"subject_id", "date", "target_hours", "actual_hours"})
            if (!item.contains(key))
                throw ValidationError(where + " is missing key '" + key + "'");
        if (!item["subject_id"].is_string() || !item["date"].is_string())
            throw ValidationError(where + ": subject_id and date must be strings");
        if (!item["target_hours"].is_number() || !item["actual_hours"].is_number())
            throw ValidationError(where + ": hours must be numbers");
        RawRecord rec;
        rec.subject_id = std::string(trim(item["subject_id"].get<std::string>()));
        if (rec.subject_id.empty()) throw ValidationError("empty subject_id at " + where);
        try {
            rec.date = Date::parse(item["date"].get<std::string>());
        } catch (const ValidationError& e) {
            throw ValidationError(std::string(e.what()) + " at " + where);
        }
        rec.target = Hours::from_value(item["target_hours"].get<double>());
        rec.actual = Hours::from_value(item["actual_hours"].get<double>());
        if (rec.target.negative())
            throw ValidationError("negative target_hours at " + where);
        if (rec.actual.negative())
            throw ValidationError("negative actual_hours at " + where);
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace

RecordFormat record_format_from_string(std::string_view name) {
    if (name == "csv") return RecordFormat::csv;
    if (name == "json") return RecordFormat::json;
    throw ConfigError("unknown record format '" + std::string(name) + "'");
}

std::vector<RawRecord> parse_records(const std::string& text, RecordFormat format) {
    if (trim(text).empty()) return {};
    return format == RecordFormat::csv ? parse_csv_records(text) : parse_json_records(text);
}

std::vector<RawRecord> parse_records(std::istream& in, RecordFormat format) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_records(buf.str(), format);
}

std::string serialize_records(const std::vector<RawRecord>& records, RecordFormat format) {
    if (format == RecordFormat::csv) {
        std::string out(kRecordHeader);
        out += '\n';
        for (const auto& r : records) {
            out += r.subject_id;
            out += ',';
            out += r.date.str();
            out += ',';
            out += r.target.str();
            out += ',';
            out += r.actual.str();
            out += '\n';
        }
        return out;
    }
    ordered_json doc = ordered_json::array();
    for (const auto& r : records) {
        ordered_json item;
        item["subject_id"] = r.subject_id;
        item["date"] = r.date.str();
        item["target_hours"] = r.target.value();
        item["actual_hours"] = r.actual.value();
        doc.push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

std::map<std::string, std::vector<CompositeIndicator>> parse_indicators(const std::string& text) {
    std::map<std::string, std::vector<CompositeIndicator>> out;
    if (trim(text).empty()) return out;
    bool header_seen = false;
    for_each_line(text, [&](int line_no, std::string_view line) {
        if (!header_seen) {
            std::string_view header = line;
            if (!header.empty() && header.back() == '\r') header.remove_suffix(1);
            if (header != kIndicatorHeader)
                throw ValidationError("line 1: expected header '" +
                                      std::string(kIndicatorHeader) + "'");
            header_seen = true;
            return;
        }
        const std::string where = "line " + std::to_string(line_no);
        std::string_view row = line;
        if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
        auto fields = split_fields(row);
        if (fields.size() != 5)
            throw ValidationError("malformed indicator row at " + where);
        std::string subject(trim(fields[0]));
        if (subject.empty()) throw ValidationError("empty subject_id at " + where);
        CompositeIndicator ind;
        ind.name = std::string(trim(fields[1]));
        if (ind.name.empty()) throw ValidationError("empty indicator name at " + where);
        ind.value = parse_double_field(trim(fields[2]), "value", where);
        try {
            ind.direction = direction_from_string(trim(fields[3]));
        } catch (const ValidationError& e) {
            throw ValidationError(std::string(e.what()) + " at " + where);
        }
        ind.weight = parse_double_field(trim(fields[4]), "weight", where);
        if (ind.weight < 0) throw ValidationError("negative weight at " + where);
        auto& list = out[subject];
        for (const auto& existing : list)
            if (existing.name == ind.name)
                throw ValidationError("duplicate indicator '" + ind.name + "' for subject '" +
                                      subject + "' at " + where);
        list.push_back(std::move(ind));
    });
    return out;
}

}  // namespace rsdkpi

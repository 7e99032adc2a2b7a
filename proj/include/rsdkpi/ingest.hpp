#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rsdkpi/detect.hpp"
#include "rsdkpi/model.hpp"

namespace rsdkpi {

enum class RecordFormat { csv, json };

RecordFormat record_format_from_string(std::string_view name);

// CSV header is exactly `subject_id,date,target_hours,actual_hours`;
// JSON is an array of objects with the same keys. Row order is preserved.
// Malformed rows name the line (CSV) or record index (JSON); negative hours
// and empty subject ids are validation errors. Empty input parses to an
// empty list.
std::vector<RawRecord> parse_records(const std::string& text, RecordFormat format);
std::vector<RawRecord> parse_records(std::istream& in, RecordFormat format);

std::string serialize_records(const std::vector<RawRecord>& records, RecordFormat format);

// Auxiliary per-subject indicator file for the composite KPI.
// Header: `subject_id,name,value,direction,weight`.
std::map<std::string, std::vector<CompositeIndicator>> parse_indicators(const std::string& text);

}  // namespace rsdkpi

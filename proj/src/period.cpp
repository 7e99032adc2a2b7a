#include "rsdkpi/period.hpp"

#include <charconv>
#include <cstdio>

#include "rsdkpi/errors.hpp"

namespace rsdkpi {

namespace {

int parse_int_field(std::string_view text, std::string_view what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ValidationError("malformed " + std::string(what) + " '" + std::string(text) + "'");
    return v;
}

}  // namespace

Grain grain_from_string(std::string_view name) {
    if (name == "month") return Grain::month;
    if (name == "quarter") return Grain::quarter;
    if (name == "year") return Grain::year;
    throw ConfigError("unknown grain '" + std::string(name) + "'");
}

std::string_view to_string(Grain g) {
    switch (g) {
        case Grain::month: return "month";
        case Grain::quarter: return "quarter";
        case Grain::year: return "year";
    }
    return "month";
}

Month Month::parse(std::string_view text) {
    if (text.size() != 7 || text[4] != '-')
        throw ValidationError("malformed period '" + std::string(text) + "', expected YYYY-MM");
    Month m;
    m.year = parse_int_field(text.substr(0, 4), "year");
    m.month = parse_int_field(text.substr(5, 2), "month");
    if (m.month < 1 || m.month > 12)
        throw ValidationError("month out of range in '" + std::string(text) + "'");
    return m;
}

std::string Month::str() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

Month Month::from_index(int idx) {
    Month m;
    m.year = idx / 12;
    m.month = idx % 12 + 1;
    if (idx < 0 && idx % 12 != 0) {
        m.year -= 1;
        m.month = idx % 12 + 13;
    }
    return m;
}

Month Month::bucket(Grain g) const {
    switch (g) {
        case Grain::month: return *this;
        case Grain::quarter: return Month{year, (month - 1) / 3 * 3 + 1};
        case Grain::year: return Month{year, 1};
    }
    return *this;
}

int days_in_month(int year, int month) {
    static const int kDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    if (month == 2 && leap) return 29;
    return kDays[month - 1];
}

Date Date::parse(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw ValidationError("malformed date '" + std::string(text) + "', expected YYYY-MM-DD");
    Date d;
    d.ym = Month::parse(text.substr(0, 7));
    d.day = parse_int_field(text.substr(8, 2), "day");
    if (d.day < 1 || d.day > days_in_month(d.ym.year, d.ym.month))
        throw ValidationError("day out of range in '" + std::string(text) + "'");
    return d;
}

std::string Date::str() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", ym.year, ym.month, day);
    return buf;
}

}  // namespace rsdkpi

#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace rsdkpi {

enum class Grain { month, quarter, year };

Grain grain_from_string(std::string_view name);
std::string_view to_string(Grain g);

// Calendar month with ISO ordering. Quarter and year grains reuse the type
// by pinning the month to the first month of the bucket.
struct Month {
    int year = 0;
    int month = 1;  // 1..12

    static Month parse(std::string_view text);  // "YYYY-MM"
    std::string str() const;

    int index() const { return year * 12 + (month - 1); }
    static Month from_index(int idx);
    Month plus(int months) const { return from_index(index() + months); }
    Month bucket(Grain g) const;

    friend constexpr auto operator<=>(const Month&, const Month&) = default;
};

struct Date {
    Month ym;
    int day = 1;  // 1..days_in_month

    static Date parse(std::string_view text);  // "YYYY-MM-DD"
    std::string str() const;

    friend constexpr auto operator<=>(const Date&, const Date&) = default;
};

int days_in_month(int year, int month);

}  // namespace rsdkpi

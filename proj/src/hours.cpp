#include "rsdkpi/hours.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "rsdkpi/errors.hpp"

namespace rsdkpi {

Hours Hours::from_value(double v) {
    if (!std::isfinite(v)) throw ValidationError("hours value is not finite");
    const double scaled = v * static_cast<double>(kScale);
    if (std::abs(scaled) > 9.0e15) throw ValidationError("hours value out of range");
    return from_ticks(std::llround(scaled));
}

Hours Hours::parse(std::string_view text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || text.empty())
        throw ValidationError("malformed hours value '" + std::string(text) + "'");
    return from_value(v);
}

std::string Hours::str() const {
    std::int64_t t = ticks_;
    std::string sign;
    if (t < 0) {
        sign = "-";
        t = -t;
    }
    std::string whole = std::to_string(t / kScale);
    std::int64_t frac = t % kScale;
    if (frac == 0) return sign + whole;
    char buf[8];
    std::snprintf(buf, sizeof buf, "%04lld", static_cast<long long>(frac));
    std::string digits(buf);
    while (digits.back() == '0') digits.pop_back();
    return sign + whole + "." + digits;
}

}  // namespace rsdkpi

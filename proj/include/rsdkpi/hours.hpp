#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace rsdkpi {

// Hour quantity on a fixed decimal grid of 1e-4 h. Integer ticks make
// per-subject sums independent of accumulation order, which the report
// determinism contract relies on. Signed, so period deltas reuse the type.
class Hours {
public:
    static constexpr std::int64_t kScale = 10'000;

    constexpr Hours() = default;

    static constexpr Hours from_ticks(std::int64_t t) {
        Hours h;
        h.ticks_ = t;
        return h;
    }

    // Rounds to the nearest grid point. Decimal text with at most four
    // fractional digits always maps exactly.
    static Hours from_value(double v);

    // Strict decimal parse ("160", "7.5", "-416.0"). Rejects anything
    // from_chars<double> does not fully consume, and non-finite values.
    static Hours parse(std::string_view text);

    constexpr std::int64_t ticks() const { return ticks_; }
    double value() const { return static_cast<double>(ticks_) / kScale; }
    bool negative() const { return ticks_ < 0; }

    // Shortest exact decimal form: "7.5", "160", "-416".
    std::string str() const;

    constexpr Hours operator+(Hours o) const { return from_ticks(ticks_ + o.ticks_); }
    constexpr Hours operator-(Hours o) const { return from_ticks(ticks_ - o.ticks_); }
    constexpr Hours& operator+=(Hours o) {
        ticks_ += o.ticks_;
        return *this;
    }
    friend constexpr auto operator<=>(Hours, Hours) = default;

private:
    std::int64_t ticks_ = 0;
};

}  // namespace rsdkpi

#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "rsdkpi/aggregate.hpp"
#include "rsdkpi/errors.hpp"

using namespace rsdkpi;

namespace {

RawRecord row(const std::string& id, const std::string& date, double t, double a) {
    return RawRecord{id, Date::parse(date), Hours::from_value(t), Hours::from_value(a)};
}

}  // namespace

TEST_CASE("aggregate sums rows of the same month") {
    std::vector<RawRecord> rows = {
        row("WO01", "2018-03-01", 8.0, 8.5),
        row("WO01", "2018-03-15", 8.0, 8.0),
    };
    Cohort c = aggregate_monthly(rows);
    REQUIRE(c.subjects.size() == 1);
    const auto& recs = c.subjects.at("WO01").records;
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].period == Month{2018, 3});
    CHECK(recs[0].target == Hours::from_value(16.0));
    CHECK(recs[0].actual == Hours::from_value(16.5));
}

TEST_CASE("aggregate keeps gaps absent instead of zero-filling") {
    std::vector<RawRecord> rows = {
        row("WO01", "2018-01-01", 160, 150),
        row("WO01", "2018-03-01", 160, 170),
    };
    Cohort c = aggregate_monthly(rows);
    const auto& recs = c.subjects.at("WO01").records;
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].period == Month{2018, 1});
    CHECK(recs[1].period == Month{2018, 3});
    CHECK(c.period_axis == std::vector<Month>{{2018, 1}, {2018, 3}});
}

TEST_CASE("aggregate rejects duplicate (subject, date) rows and lists offenders") {
    std::vector<RawRecord> rows = {
        row("WO01", "2018-01-01", 8, 8),
        row("WO01", "2018-01-01", 8, 8),
        row("WO02", "2018-01-02", 8, 8),
    };
    try {
        aggregate_monthly(rows);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        std::string msg = e.what();
        CHECK(msg.find("WO01") != std::string::npos);
        CHECK(msg.find("2018-01-01") != std::string::npos);
    }
}

TEST_CASE("aggregate truncates a long duplicate listing") {
    std::vector<RawRecord> rows;
    for (int d = 1; d <= 12; ++d) {
        std::string date = "2018-01-" + std::string(d < 10 ? "0" : "") + std::to_string(d);
        rows.push_back(row("WO01", date, 8, 8));
        rows.push_back(row("WO01", date, 8, 8));
    }
    try {
        aggregate_monthly(rows);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("more") != std::string::npos);
    }
}

TEST_CASE("aggregate conserves total ticks exactly, order-independently") {
    std::mt19937_64 eng(11);
    std::vector<RawRecord> rows;
    std::int64_t target_ticks = 0;
    std::int64_t actual_ticks = 0;
    for (int i = 0; i < 400; ++i) {
        // Unique (subject, date) keys by construction; only hours are random.
        int j = i / 7;
        Month m = Month{2016, 1}.plus(j / 28);
        RawRecord r;
        r.subject_id = "WO" + std::to_string(1 + i % 7);
        r.date = Date{m, 1 + j % 28};
        r.target = Hours::from_ticks(static_cast<std::int64_t>(eng() % 3'000'000));
        r.actual = Hours::from_ticks(static_cast<std::int64_t>(eng() % 3'000'000));
        target_ticks += r.target.ticks();
        actual_ticks += r.actual.ticks();
        rows.push_back(std::move(r));
    }
    auto total = [](const Cohort& c) {
        std::pair<std::int64_t, std::int64_t> sums{0, 0};
        for (const auto& [id, series] : c.subjects)
            for (const auto& rec : series.records) {
                sums.first += rec.target.ticks();
                sums.second += rec.actual.ticks();
            }
        return sums;
    };
    Cohort forward = aggregate_monthly(rows);
    CHECK(total(forward) == std::pair{target_ticks, actual_ticks});

    std::vector<RawRecord> shuffled = rows;
    std::shuffle(shuffled.begin(), shuffled.end(), eng);
    CHECK(aggregate_monthly(shuffled) == forward);
}

TEST_CASE("aggregate sorts records and builds the union axis") {
    std::vector<RawRecord> rows = {
        row("WO02", "2018-04-01", 1, 1),
        row("WO01", "2018-02-01", 1, 1),
        row("WO02", "2018-01-01", 1, 1),
        row("WO01", "2018-03-01", 1, 1),
    };
    Cohort c = aggregate_monthly(rows);
    CHECK(c.period_axis ==
          std::vector<Month>{{2018, 1}, {2018, 2}, {2018, 3}, {2018, 4}});
    const auto& wo2 = c.subjects.at("WO02").records;
    CHECK(wo2.front().period == Month{2018, 1});
    CHECK(wo2.back().period == Month{2018, 4});
}

TEST_CASE("aggregate supports quarter and year buckets") {
    std::vector<RawRecord> rows = {
        row("WO01", "2018-01-10", 100, 90),
        row("WO01", "2018-02-10", 100, 95),
        row("WO01", "2018-03-10", 100, 105),
        row("WO01", "2018-04-10", 100, 100),
    };
    Cohort q = aggregate(rows, Grain::quarter);
    const auto& qr = q.subjects.at("WO01").records;
    REQUIRE(qr.size() == 2);
    CHECK(qr[0].period == Month{2018, 1});
    CHECK(qr[0].target == Hours::from_value(300.0));
    CHECK(qr[0].actual == Hours::from_value(290.0));
    CHECK(qr[1].period == Month{2018, 4});

    Cohort y = aggregate(rows, Grain::year);
    const auto& yr = y.subjects.at("WO01").records;
    REQUIRE(yr.size() == 1);
    CHECK(yr[0].period == Month{2018, 1});
    CHECK(yr[0].target == Hours::from_value(400.0));
}

TEST_CASE("aggregate of a full panel yields the full axis") {
    std::vector<RawRecord> rows;
    for (int s = 1; s <= 19; ++s)
        for (int p = 0; p < 70; ++p) {
            Month m = Month{2016, 1}.plus(p);
            rows.push_back(RawRecord{"WO" + std::to_string(s), Date{m, 1},
                                     Hours::from_value(160), Hours::from_value(160)});
        }
    Cohort c = aggregate_monthly(rows);
    CHECK(c.subjects.size() == 19);
    CHECK(c.period_axis.size() == 70);
    for (const auto& [id, series] : c.subjects) CHECK(series.records.size() == 70);
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "helpers.hpp"
#include "rsdkpi/aggregate.hpp"
#include "rsdkpi/cohort.hpp"
#include "rsdkpi/errors.hpp"

using namespace rsdkpi;
using doctest::Approx;

namespace {

RsdSeries series_of(const std::string& id, const std::vector<double>& values,
                    Month start = {2016, 1}) {
    RsdSeries r;
    r.subject_id = id;
    for (std::size_t i = 0; i < values.size(); ++i)
        r.points.push_back({start.plus(static_cast<int>(i)), values[i]});
    return r;
}

}  // namespace

TEST_CASE("cohort_snapshots computes per-period median, mean and count") {
    std::map<std::string, RsdSeries> by_subject = {
        {"A", series_of("A", {0.1, 0.2})},
        {"B", series_of("B", {0.2, 0.3})},
        {"C", series_of("C", {0.4})},
    };
    auto snaps = cohort_snapshots(by_subject);
    REQUIRE(snaps.size() == 2);
    CHECK(snaps[0].period == Month{2016, 1});
    CHECK(snaps[0].subject_count == 3);
    CHECK(snaps[0].median_rsd == 0.2);
    CHECK(snaps[0].mean_rsd == Approx(0.23333333333333334).epsilon(1e-15));
    // second period: only A and B -> even count, midpoint median
    CHECK(snaps[1].subject_count == 2);
    CHECK(snaps[1].median_rsd == 0.25);
    CHECK(snaps[1].mean_rsd == 0.25);
}

TEST_CASE("cohort_snapshots handles singletons and disjoint periods") {
    std::map<std::string, RsdSeries> solo = {{"A", series_of("A", {0.3})}};
    auto snaps = cohort_snapshots(solo);
    REQUIRE(snaps.size() == 1);
    CHECK(snaps[0].median_rsd == 0.3);
    CHECK(snaps[0].mean_rsd == 0.3);
    CHECK(snaps[0].subject_count == 1);

    std::map<std::string, RsdSeries> disjoint = {
        {"A", series_of("A", {0.1}, {2016, 1})},
        {"B", series_of("B", {0.5}, {2016, 7})},
    };
    auto ds = cohort_snapshots(disjoint);
    REQUIRE(ds.size() == 2);
    CHECK(ds[0].period == Month{2016, 1});
    CHECK(ds[0].subject_count == 1);
    CHECK(ds[1].period == Month{2016, 7});
    CHECK(ds[1].median_rsd == 0.5);

    std::map<std::string, RsdSeries> empty;
    CHECK_THROWS_AS(cohort_snapshots(empty), ValidationError);
}

TEST_CASE("cohort_snapshots overloads agree") {
    std::vector<RawRecord> rows;
    for (int s = 0; s < 5; ++s)
        for (int p = 0; p < 12; ++p)
            rows.push_back(RawRecord{"WO0" + std::to_string(s + 1),
                                     Date{Month{2017, 1}.plus(p), 1},
                                     Hours::from_value(160),
                                     Hours::from_value(140 + 7.0 * s + p)});
    Cohort cohort = aggregate_monthly(rows);
    std::map<std::string, RsdSeries> by_subject;
    for (const auto& [id, series] : cohort.subjects)
        by_subject.emplace(id, rsd_series(series, RsdVariant::paper));
    CHECK(cohort_snapshots(cohort, RsdVariant::paper) == cohort_snapshots(by_subject));
}

TEST_CASE("group_adjust subtracts the period median") {
    std::map<std::string, RsdSeries> by_subject = {
        {"A", series_of("A", {0.1, 0.2})},
        {"B", series_of("B", {0.2, 0.3})},
        {"C", series_of("C", {0.4})},
    };
    auto snaps = cohort_snapshots(by_subject);
    auto adj = group_adjust(by_subject.at("A"), snaps);
    CHECK(adj.subject_id == "A");
    REQUIRE(adj.points.size() == 2);
    CHECK(adj.points[0].adjusted_rsd == Approx(0.1 - 0.2).epsilon(1e-15));
    CHECK(adj.points[1].adjusted_rsd == Approx(0.2 - 0.25).epsilon(1e-15));

    // a subject's own singleton period adjusts to exactly zero
    std::map<std::string, RsdSeries> solo = {{"A", series_of("A", {0.37})}};
    auto zeroed = group_adjust(solo.at("A"), cohort_snapshots(solo));
    CHECK(zeroed.points[0].adjusted_rsd == 0.0);

    // a period missing from the snapshots is an internal error
    auto rogue = series_of("A", {0.1, 0.2, 0.9});
    CHECK_THROWS_AS(group_adjust(rogue, snaps), std::logic_error);
}

TEST_CASE("group adjustment leaves a zero median per period") {
    testutil::Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        int subjects = 3 + static_cast<int>(rng.uniform_int(0, 8));
        int periods = 2 + static_cast<int>(rng.uniform_int(0, 10));
        std::map<std::string, RsdSeries> by_subject;
        for (int s = 0; s < subjects; ++s) {
            std::vector<double> vals;
            for (int p = 0; p < periods; ++p) vals.push_back(rng.uniform(0.0, 1.0));
            std::string id = "S" + std::to_string(s);
            by_subject.emplace(id, series_of(id, vals));
        }
        auto snaps = cohort_snapshots(by_subject);
        for (int p = 0; p < periods; ++p) {
            std::vector<double> column;
            for (const auto& [id, r] : by_subject)
                column.push_back(group_adjust(r, snaps).points[p].adjusted_rsd);
            std::sort(column.begin(), column.end());
            double median = subjects % 2 == 1
                                ? column[subjects / 2]
                                : 0.5 * (column[subjects / 2 - 1] + column[subjects / 2]);
            if (subjects % 2 == 1)
                CHECK(median == 0.0);  // odd count: the median element cancels exactly
            else
                CHECK(std::abs(median) <= 1e-12);
        }
    }
}

TEST_CASE("group adjustment cancels cohort-wide scalings of the RSD") {
    // If every subject's RSD doubles in a period, medians double too and the
    // adjusted values scale with the group; relative structure is preserved.
    std::map<std::string, RsdSeries> base = {
        {"A", series_of("A", {0.10, 0.10})},
        {"B", series_of("B", {0.20, 0.20})},
        {"C", series_of("C", {0.30, 0.30})},
    };
    std::map<std::string, RsdSeries> scaled = base;
    for (auto& [id, r] : scaled)
        for (auto& p : r.points) p.rsd *= 2.0;
    auto base_adj = group_adjust(base.at("C"), cohort_snapshots(base));
    auto scaled_adj = group_adjust(scaled.at("C"), cohort_snapshots(scaled));
    for (std::size_t i = 0; i < base_adj.points.size(); ++i)
        CHECK(scaled_adj.points[i].adjusted_rsd ==
              Approx(2.0 * base_adj.points[i].adjusted_rsd).epsilon(1e-15));
    // and a cohort-wide additive shift cancels entirely
    std::map<std::string, RsdSeries> shifted = base;
    for (auto& [id, r] : shifted)
        for (auto& p : r.points) p.rsd += 0.18;
    auto shifted_adj = group_adjust(shifted.at("C"), cohort_snapshots(shifted));
    for (std::size_t i = 0; i < base_adj.points.size(); ++i)
        CHECK(shifted_adj.points[i].adjusted_rsd ==
              Approx(base_adj.points[i].adjusted_rsd).epsilon(1e-12));
}

TEST_CASE("rank_subjects orders ascending with competition ties") {
    std::map<std::string, double> summary = {
        {"B", 0.1}, {"A", 0.1}, {"C", 0.2}, {"D", 0.05}};
    auto ranked = rank_subjects(summary);
    REQUIRE(ranked.size() == 4);
    CHECK(ranked[0] == RankedSubject{"D", 0.05, 1});
    CHECK(ranked[1] == RankedSubject{"A", 0.1, 2});  // tie broken lexicographically
    CHECK(ranked[2] == RankedSubject{"B", 0.1, 2});  // shares the rank
    CHECK(ranked[3] == RankedSubject{"C", 0.2, 4});  // competition: next rank skips

    std::map<std::string, double> tie3 = {{"A", 0.1}, {"B", 0.1}, {"C", 0.2}};
    auto r3 = rank_subjects(tie3);
    CHECK(r3[0].rank == 1);
    CHECK(r3[1].rank == 1);
    CHECK(r3[2].rank == 3);

    CHECK(rank_subjects({}).empty());
}

TEST_CASE("ranking is invariant under monotone transforms of the values") {
    testutil::Rng rng(77);
    std::map<std::string, double> summary;
    for (int s = 0; s < 25; ++s) summary["S" + std::to_string(s)] = rng.uniform(0.0, 1.0);
    auto baseline = rank_subjects(summary);
    std::map<std::string, double> transformed;
    for (const auto& [id, v] : summary) transformed[id] = std::exp(3.0 * v);  // monotone
    auto mapped = rank_subjects(transformed);
    REQUIRE(mapped.size() == baseline.size());
    for (std::size_t i = 0; i < baseline.size(); ++i) {
        CHECK(mapped[i].subject_id == baseline[i].subject_id);
        CHECK(mapped[i].rank == baseline[i].rank);
    }
}

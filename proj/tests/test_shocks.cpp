#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gvarkit/error.hpp"
#include "gvarkit/rng.hpp"
#include "gvarkit/shocks.hpp"
#include "helpers.hpp"

using namespace gvarkit;

namespace {

const YearMonth kStart{2000, 1};
const YearMonth kEnd{2000, 12};

DeclarationRecord counted(const std::string& id, const std::string& state, const std::string& type,
                          Date begin, int counties) {
    return {id, state, type, begin, std::nullopt, counties, std::nullopt};
}

DeclarationRecord listed(const std::string& id, const std::string& state, const std::string& type,
                         Date begin, std::vector<std::string> counties) {
    DeclarationRecord rec{id, state, type, begin, std::nullopt,
                          static_cast<int>(counties.size()), std::move(counties)};
    return rec;
}

std::vector<StateMeta> meta_ab() { return {{"AA", 10}, {"BB", 20}}; }

ShockPanel build(const std::vector<DeclarationRecord>& records,
                 const std::vector<StateMeta>& meta = meta_ab()) {
    return build_state_shocks(records, meta, weather_event_groups(), IncidentTaxonomy::built_in(),
                              kStart, kEnd);
}

}  // namespace

TEST_CASE("single declaration gives the county share") {
    ShockPanel panel = build({counted("A", "AA", "Fire", {2000, 3, 15}, 4)});
    CHECK(panel.s(2, 0) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(panel.emergency(2, 0) == 1);
    CHECK(panel.hit(2, 0) == 4);
    // everything else is zero
    CHECK(panel.s.sum() == panel.s(2, 0));
}

TEST_CASE("no declarations means zero shocks") {
    ShockPanel panel = build({});
    CHECK(panel.s.cwiseAbs().maxCoeff() == 0.0);
    CHECK(panel.national.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("county lists deduplicate, integer counts sum and cap") {
    // lists {A,B} and {B,C}: three distinct counties
    ShockPanel with_lists = build({listed("A", "AA", "Flood", {2000, 5, 1}, {"A", "B"}),
                                   listed("B", "AA", "Fire", {2000, 5, 20}, {"B", "C"})});
    CHECK(with_lists.hit(4, 0) == 3);
    CHECK(with_lists.s(4, 0) == doctest::Approx(0.3).epsilon(1e-15));

    // bare counts 2 and 2 sum to 4
    ShockPanel with_counts = build({counted("A", "AA", "Flood", {2000, 5, 1}, 2),
                                    counted("B", "AA", "Fire", {2000, 5, 20}, 2)});
    CHECK(with_counts.hit(4, 0) == 4);
    CHECK(with_counts.s(4, 0) == doctest::Approx(0.4).epsilon(1e-15));

    // counts beyond the county total cap at one
    ShockPanel capped = build({counted("A", "AA", "Flood", {2000, 5, 1}, 8),
                               counted("B", "AA", "Fire", {2000, 5, 2}, 8)});
    CHECK(capped.hit(4, 0) == 10);
    CHECK(capped.s(4, 0) == 1.0);
}

TEST_CASE("declarations are assigned to their begin month only") {
    ShockPanel panel = build({{"A", "AA", "Flood", Date{2000, 5, 25}, Date{2000, 7, 10}, 3,
                               std::nullopt}});
    CHECK(panel.s(4, 0) > 0.0);
    CHECK(panel.s(5, 0) == 0.0);
    CHECK(panel.s(6, 0) == 0.0);
}

TEST_CASE("non-weather and filtered-out groups do not count") {
    ShockPanel panel = build({counted("A", "AA", "Earthquake", {2000, 3, 1}, 5),
                              counted("B", "AA", "Chemical Spill", {2000, 3, 1}, 5)});
    CHECK(panel.s.cwiseAbs().maxCoeff() == 0.0);

    ShockPanel fires_only =
        build_state_shocks({counted("A", "AA", "Fire", {2000, 3, 1}, 5),
                            counted("B", "AA", "Flood", {2000, 4, 1}, 5)},
                           meta_ab(), {EventGroup::fire}, IncidentTaxonomy::built_in(), kStart,
                           kEnd);
    CHECK(fires_only.s(2, 0) > 0.0);
    CHECK(fires_only.s(3, 0) == 0.0);
}

TEST_CASE("records outside the window are ignored") {
    ShockPanel panel = build({counted("A", "AA", "Fire", {1999, 12, 31}, 5),
                              counted("B", "AA", "Fire", {2001, 1, 1}, 5)});
    CHECK(panel.s.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("empty filter raises") {
    CHECK_THROWS_AS(build_state_shocks({}, meta_ab(), {}, IncidentTaxonomy::built_in(), kStart,
                                       kEnd),
                    Error);
}

TEST_CASE("unknown state in a record raises") {
    try {
        build({counted("A", "XX", "Fire", {2000, 3, 1}, 5)});
        FAIL("expected UnknownState");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unknown_state);
    }
}

TEST_CASE("national shock arithmetic") {
    // two states hit with 4 and 6 counties against a 3142-county universe
    std::vector<StateMeta> meta = built_in_state_meta();
    std::vector<DeclarationRecord> records = {counted("A", "CA", "Fire", {2000, 3, 1}, 4),
                                              counted("B", "TX", "Flood", {2000, 3, 2}, 6)};
    ShockPanel panel = build_state_shocks(records, meta, weather_event_groups(),
                                          IncidentTaxonomy::built_in(), kStart, kEnd);
    CHECK(panel.national(2) == doctest::Approx(10.0 / 3142.0).epsilon(1e-15));
    CHECK(panel.national(0) == 0.0);
}

TEST_CASE("national consistency: all states fully hit gives one") {
    std::vector<DeclarationRecord> records = {counted("A", "AA", "Fire", {2000, 3, 1}, 10),
                                              counted("B", "BB", "Flood", {2000, 3, 2}, 20)};
    ShockPanel panel = build(records);
    CHECK(panel.s(2, 0) == 1.0);
    CHECK(panel.s(2, 1) == 1.0);
    CHECK(panel.national(2) == 1.0);
}

TEST_CASE("property: shocks stay in [0,1] and adding a declaration never decreases them") {
    Rng rng(99);
    std::vector<DeclarationRecord> records;
    ShockPanel previous = build(records);
    for (int step = 0; step < 60; ++step) {
        std::string state = rng.uniform01() < 0.5 ? "AA" : "BB";
        int month = 1 + static_cast<int>(rng.bounded(12));
        int counties = 1 + static_cast<int>(rng.bounded(25));
        records.push_back(counted("R" + std::to_string(step), state, "Fire",
                                  {2000, month, 1 + static_cast<int>(rng.bounded(28))}, counties));
        ShockPanel current = build(records);
        CHECK(current.s.minCoeff() >= 0.0);
        CHECK(current.s.maxCoeff() <= 1.0);
        CHECK(current.national.minCoeff() >= 0.0);
        CHECK(current.national.maxCoeff() <= 1.0);
        CHECK(((current.s - previous.s).array() >= -1e-15).all());
        CHECK(((current.national - previous.national).array() >= -1e-15).all());
        // s is one exactly when every county is hit
        for (Eigen::Index t = 0; t < current.periods(); ++t) {
            for (Eigen::Index i = 0; i < current.size(); ++i) {
                bool full = current.hit(t, i) == meta_ab()[static_cast<std::size_t>(i)].counties;
                CHECK((current.s(t, i) == 1.0) == full);
            }
        }
        previous = current;
    }
}

TEST_CASE("property: filter union hits are subadditive, equal when disjoint") {
    // disjoint county sets across groups
    std::vector<DeclarationRecord> records = {
        listed("A", "AA", "Fire", {2000, 5, 1}, {"a", "b"}),
        listed("B", "AA", "Flood", {2000, 5, 3}, {"c"}),
        listed("C", "AA", "Winter Storm", {2000, 5, 7}, {"b", "d"})};
    auto hits = [&](const std::set<EventGroup>& filter) {
        return build_state_shocks(records, meta_ab(), filter, IncidentTaxonomy::built_in(), kStart,
                                  kEnd)
            .hit(4, 0);
    };
    // fire/flood county sets are disjoint: exact additivity
    CHECK(hits({EventGroup::fire, EventGroup::flood}) ==
          hits({EventGroup::fire}) + hits({EventGroup::flood}));
    // fire/winter share county b: strict subadditivity
    CHECK(hits({EventGroup::fire, EventGroup::winter}) <
          hits({EventGroup::fire}) + hits({EventGroup::winter}));
}

TEST_CASE("seasons follow the begin month") {
    CHECK(season_of_month(12) == Season::DJF);
    CHECK(season_of_month(1) == Season::DJF);
    CHECK(season_of_month(4) == Season::MAM);
    CHECK(season_of_month(8) == Season::JJA);
    CHECK(season_of_month(9) == Season::SON);
}

TEST_CASE("declaration summary partitions the weather records") {
    std::vector<DeclarationRecord> records = {
        counted("A", "AA", "Fire", {2000, 1, 1}, 1),   counted("B", "AA", "Fire", {2000, 7, 1}, 1),
        counted("C", "BB", "Fire", {2000, 8, 1}, 1),   counted("D", "AA", "Flood", {2000, 4, 1}, 1),
        counted("E", "BB", "Flood", {2000, 5, 1}, 1),  counted("F", "AA", "Earthquake", {2000, 2, 1}, 1)};
    DeclarationSummary summary = summarize_declarations(records, IncidentTaxonomy::built_in());
    CHECK(summary.by_group.at(EventGroup::fire) == 3);
    CHECK(summary.by_group.at(EventGroup::flood) == 2);
    CHECK(summary.total_weather == 5);
    CHECK(summary.total_non_weather == 1);
    int season_total = 0;
    for (const auto& [season, count] : summary.by_season) season_total += count;
    CHECK(season_total == summary.total_weather);
    CHECK(summary.by_season.at(Season::DJF) == 1);
    CHECK(summary.by_season.at(Season::JJA) == 2);
    CHECK(summary.by_state_group.at("AA").at(EventGroup::fire) == 2);
    // record beginning 2005-08 sits in JJA
    CHECK(season_of_month(8) == Season::JJA);
}

TEST_CASE("empty records give empty summaries") {
    DeclarationSummary summary = summarize_declarations({}, IncidentTaxonomy::built_in());
    CHECK(summary.by_group.empty());
    CHECK(summary.by_season.empty());
    CHECK(summary.total_weather == 0);
}

TEST_CASE("shock panel export and re-import preserve the series") {
    ShockPanel panel = build({listed("A", "AA", "Fire", {2000, 3, 1}, {"x", "y", "z"}),
                              counted("B", "BB", "Flood", {2000, 9, 1}, 7)});
    auto dir = testutil::scratch_dir("shock_roundtrip");
    write_shock_panel(dir / "shocks.csv", panel);
    ShockPanel back = read_shock_panel(dir / "shocks.csv", meta_ab());
    CHECK(back.s == panel.s);
    CHECK(back.hit == panel.hit);
    CHECK(back.emergency == panel.emergency);
    CHECK(back.national == panel.national);
    CHECK(back.start == panel.start);
}

TEST_CASE("inconsistent metadata raises") {
    ShockPanel panel = build({});
    std::vector<StateMeta> wrong = {{"AA", 10}};
    CHECK_THROWS_AS(build_national_shock(panel, wrong), Error);
}

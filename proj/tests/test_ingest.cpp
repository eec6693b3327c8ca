#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "gvarkit/error.hpp"
#include "gvarkit/ingest.hpp"
#include "gvarkit/us_defaults.hpp"
#include "helpers.hpp"

using namespace gvarkit;

namespace {

IngestConfig test_config() {
    IngestConfig config;
    config.declaration_columns = DeclarationColumns{};
    return config;
}

}  // namespace

TEST_CASE("pre-counted declaration row parses") {
    CsvTable table = parse_delimited(
        "declaration_id,state,incident_type,begin_date,end_date,counties_hit\n"
        "DR-1603,LA,Hurricane,2005-08-29,2005-11-01,64\n");
    DeclarationParse parsed = parse_declarations(table, test_config());
    REQUIRE(parsed.records.size() == 1);
    const auto& rec = parsed.records[0];
    CHECK(rec.declaration_id == "DR-1603");
    CHECK(rec.state == "LA");
    CHECK(rec.incident_type == "Hurricane");
    CHECK(rec.begin_date == Date{2005, 8, 29});
    REQUIRE(rec.end_date.has_value());
    CHECK(*rec.end_date == Date{2005, 11, 1});
    CHECK(rec.counties_hit == 64);
    CHECK_FALSE(rec.county_names.has_value());
    CHECK(parsed.rejects.empty());
}

TEST_CASE("per-county rows group into one record") {
    CsvTable table = parse_delimited(
        "declaration_id,state,incident_type,begin_date,end_date,designated_area\n"
        "DR-1,TX,Flood,2001-06-05,,Travis\n"
        "DR-1,TX,Flood,2001-06-05,,Harris\n"
        "DR-1,TX,Flood,2001-06-05,,Travis\n"  // duplicate county ignored
        "DR-2,TX,Flood,2001-07-01,,Bexar\n");
    IngestConfig config = test_config();
    config.declaration_columns.counties = "absent_column";
    DeclarationParse parsed = parse_declarations(table, config);
    REQUIRE(parsed.records.size() == 2);
    CHECK(parsed.records[0].counties_hit == 2);
    REQUIRE(parsed.records[0].county_names.has_value());
    CHECK(parsed.records[0].county_names->size() == 2);
    CHECK(parsed.records[1].counties_hit == 1);
    CHECK(parsed.accepted_rows == 4);
}

TEST_CASE("bad rows land in the rejects report, not the output") {
    CsvTable table = parse_delimited(
        "declaration_id,state,incident_type,begin_date,end_date,counties_hit\n"
        "A,ZZ,Fire,2000-01-01,,3\n"
        "B,CA,Fire,not-a-date,,3\n"
        "C,CA,Fire,2000-05-01,1999-01-01,3\n"
        "D,CA,Fire,2000-05-01,,-2\n"
        "E,CA,Fire,2000-05-01,,2\n");
    DeclarationParse parsed = parse_declarations(table, test_config());
    CHECK(parsed.records.size() == 1);
    CHECK(parsed.records[0].declaration_id == "E");
    CHECK(parsed.rejects.size() == 4);
    // accepted + rejected partitions the input rows
    CHECK(parsed.accepted_rows + parsed.rejects.size() == table.rows.size());
}

TEST_CASE("unmapped incident labels warn and classify as non_weather") {
    CsvTable table = parse_delimited(
        "declaration_id,state,incident_type,begin_date,end_date,counties_hit\n"
        "A,CA,Alien Invasion,2000-01-01,,3\n");
    DeclarationParse parsed = parse_declarations(table, test_config());
    REQUIRE(parsed.records.size() == 1);
    CHECK(parsed.warnings.size() == 1);
    CHECK(test_config().taxonomy.classify("Alien Invasion") == EventGroup::non_weather);
}

TEST_CASE("missing required columns raise") {
    CsvTable table = parse_delimited("declaration_id,state\nA,CA\n");
    CHECK_THROWS_AS(parse_declarations(table, test_config()), Error);
}

TEST_CASE("empty declarations file raises EmptyFile") {
    auto dir = testutil::scratch_dir("ingest_empty");
    testutil::write_text(dir / "empty.csv", "");
    try {
        parse_declarations(dir / "empty.csv", test_config());
        FAIL("expected EmptyFile");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::empty_file);
    }
}

TEST_CASE("declaration serialization round-trips") {
    CsvTable table = parse_delimited(
        "declaration_id,state,incident_type,begin_date,end_date,counties_hit\n"
        "A,CA,Fire,2000-01-01,2000-02-01,3\n"
        "B,TX,Flood,2001-06-05,,10\n");
    DeclarationParse first = parse_declarations(table, test_config());
    auto dir = testutil::scratch_dir("ingest_roundtrip");
    write_declarations(dir / "decl.csv", first.records);
    DeclarationParse second = parse_declarations(dir / "decl.csv", test_config());
    CHECK(first.records == second.records);
}

TEST_CASE("trade flow duplicates sum and self-flows are flagged") {
    CsvTable table = parse_delimited(
        "origin,destination,value\nCA,TX,10\nCA,TX,5\nCA,CA,7\nTX,CA,2\n");
    TradeFlowTable flows = parse_trade_flows(table);
    REQUIRE(flows.entries.size() == 3);
    CHECK(flows.entries[0] == TradeFlow{"CA", "TX", 15.0});
    REQUIRE(flows.self_flow_indices.size() == 1);
    CHECK(flows.entries[flows.self_flow_indices[0]].origin == "CA");
    CHECK(flows.entries[flows.self_flow_indices[0]].destination == "CA");
}

TEST_CASE("negative trade flow raises NegativeValue") {
    CsvTable table = parse_delimited("origin,destination,value\nCA,TX,-1\n");
    try {
        parse_trade_flows(table);
        FAIL("expected NegativeValue");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::negative_value);
    }
}

TEST_CASE("trade flows round-trip") {
    CsvTable table = parse_delimited("origin,destination,value\nCA,TX,10.5\nTX,CA,2.25\n");
    TradeFlowTable first = parse_trade_flows(table);
    auto dir = testutil::scratch_dir("trade_roundtrip");
    write_trade_flows(dir / "flows.csv", first);
    TradeFlowTable second = parse_trade_flows(dir / "flows.csv");
    CHECK(first.entries == second.entries);
}

TEST_CASE("wide activity panel parses and restricts to the window") {
    ActivityConfig config;
    config.state_universe = {"AA", "BB"};
    config.window_start = {2000, 2};
    config.window_end = {2000, 3};
    CsvTable table = parse_delimited(
        "date,AA,BB\n2000-01,1,2\n2000-02,3,4\n2000-03,5,6\n2000-04,7,8\n");
    ActivityPanel panel = parse_activity_panel(table, config);
    CHECK(panel.start == YearMonth{2000, 2});
    CHECK(panel.periods() == 2);
    CHECK(panel.values(0, 0) == 3.0);
    CHECK(panel.values(1, 1) == 6.0);
}

TEST_CASE("long activity panel matches the wide layout") {
    ActivityConfig wide;
    wide.state_universe = {"AA", "BB"};
    wide.window_start = {2000, 1};
    wide.window_end = {2000, 2};
    ActivityPanel from_wide = parse_activity_panel(
        parse_delimited("date,AA,BB\n2000-01,1,2\n2000-02,3,4\n"), wide);

    ActivityConfig long_cfg = wide;
    long_cfg.layout = PanelLayout::long_format;
    ActivityPanel from_long = parse_activity_panel(
        parse_delimited("date,state,value\n2000-01,AA,1\n2000-01,BB,2\n"
                        "2000-02,AA,3\n2000-02,BB,4\n"),
        long_cfg);
    CHECK(from_wide.values == from_long.values);
    CHECK(from_wide.states == from_long.states);
}

TEST_CASE("interior gap raises") {
    ActivityConfig config;
    config.state_universe = {"AA", "BB"};
    config.layout = PanelLayout::long_format;
    config.window_start = {2001, 1};
    config.window_end = {2001, 12};
    CsvTable table = parse_delimited(
        "date,state,value\n2001-05,AA,1\n2001-05,BB,1\n2001-06,AA,1\n"
        "2001-07,AA,1\n2001-07,BB,1\n");  // BB missing 2001-06
    try {
        parse_activity_panel(table, config);
        FAIL("expected InteriorGap");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::interior_gap);
    }
}

TEST_CASE("window outside the data raises WindowEmpty") {
    ActivityConfig config;
    config.state_universe = {"AA"};
    config.window_start = {2025, 1};
    config.window_end = {2025, 12};
    CsvTable table = parse_delimited("date,AA\n2000-01,1\n");
    try {
        parse_activity_panel(table, config);
        FAIL("expected WindowEmpty");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::window_empty);
    }
}

TEST_CASE("unknown state in the panel raises") {
    ActivityConfig config;
    config.state_universe = {"AA"};
    CsvTable table = parse_delimited("date,AA,XX\n2000-01,1,2\n");
    try {
        parse_activity_panel(table, config);
        FAIL("expected UnknownState");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unknown_state);
    }
}

TEST_CASE("activity panel round-trips through both layouts") {
    ActivityConfig config;
    config.state_universe = {"AA", "BB"};
    config.window_start = {2000, 1};
    config.window_end = {2000, 3};
    ActivityPanel panel = parse_activity_panel(
        parse_delimited("date,AA,BB\n2000-01,1.5,-2.25\n2000-02,0.125,4\n2000-03,5,6\n"), config);

    auto dir = testutil::scratch_dir("panel_roundtrip");
    for (PanelLayout layout : {PanelLayout::wide, PanelLayout::long_format}) {
        auto path = dir / (layout == PanelLayout::wide ? "wide.csv" : "long.csv");
        write_activity_panel(path, panel, layout);
        ActivityConfig back = config;
        back.layout = layout;
        ActivityPanel again = parse_activity_panel(path, back);
        CHECK(again.values == panel.values);
        CHECK(again.start == panel.start);
        CHECK(again.states == panel.states);
    }
}

TEST_CASE("built-in US tables satisfy their invariants") {
    const auto& universe = default_state_universe();
    CHECK(universe.size() == 50);
    CHECK(std::is_sorted(universe.begin(), universe.end()));

    long total = 0;
    for (const auto& state : universe) total += default_state_counties().at(state);
    CHECK(total == 3142);

    validate_us_region_map(RegionMap::built_in(), universe);
    RegionMap map = RegionMap::built_in();
    CHECK(map.region_of("AK") == ClimateRegion::unassigned);
    CHECK(map.region_of("HI") == ClimateRegion::unassigned);
    CHECK(map.region_of("TX") == ClimateRegion::S);
    CHECK(map.region_of("CA") == ClimateRegion::W);

    // every contiguous state has at least one border entry
    std::set<std::string> bordered;
    for (const auto& [a, b] : default_state_borders()) {
        bordered.insert(a);
        bordered.insert(b);
    }
    CHECK(bordered.size() == 48);
    CHECK_FALSE(bordered.count("AK"));
    CHECK_FALSE(bordered.count("HI"));
}

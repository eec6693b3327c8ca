#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gvarkit/calendar.hpp"
#include "gvarkit/csv.hpp"

namespace gvarkit {

enum class EventGroup { winter, tropical_storm, storm, fire, flood, drought, non_weather };

const char* to_string(EventGroup group);
std::optional<EventGroup> event_group_from_string(std::string_view name);

/// All six weather-related groups (non_weather excluded).
const std::set<EventGroup>& weather_event_groups();

/// Maps raw incident-type labels to event groups. Unmapped labels classify as
/// non_weather; callers that care record a warning.
struct IncidentTaxonomy {
    std::map<std::string, EventGroup> groups;

    EventGroup classify(const std::string& raw_label) const;
    bool contains(const std::string& raw_label) const { return groups.count(raw_label) > 0; }

    static IncidentTaxonomy built_in();
};

struct DeclarationRecord {
    std::string declaration_id;
    std::string state;
    std::string incident_type;  // raw label as published
    Date begin_date;
    std::optional<Date> end_date;
    int counties_hit = 0;
    std::optional<std::vector<std::string>> county_names;

    bool operator==(const DeclarationRecord&) const = default;
};

struct RejectedRow {
    std::size_t row_number;  // 1-based data row index
    std::string reason;
};

struct DeclarationParse {
    std::vector<DeclarationRecord> records;
    std::vector<RejectedRow> rejects;
    std::vector<std::string> warnings;
    std::size_t accepted_rows = 0;  // accepted_rows + rejects.size() == input rows
};

struct DeclarationColumns {
    std::string id = "declaration_id";
    std::string state = "state";
    std::string incident_type = "incident_type";
    std::string begin_date = "begin_date";
    std::string end_date = "end_date";
    std::string counties = "counties_hit";       // pre-counted layout
    std::string county_name = "designated_area"; // one-row-per-county layout
};

struct IngestConfig {
    DeclarationColumns declaration_columns;
    IncidentTaxonomy taxonomy = IncidentTaxonomy::built_in();
    std::vector<std::string> state_universe;  // empty -> built-in 50 states
    char delimiter = ',';
};

/// Parses disaster declarations from either a pre-counted table (one row per
/// declaration with an integer county count) or a per-county table (one row
/// per declaration-county pair, grouped by declaration id). Rows with unknown
/// state codes, unparseable dates, or negative counts land in the rejects
/// report.
DeclarationParse parse_declarations(const std::filesystem::path& path, const IngestConfig& config);
DeclarationParse parse_declarations(const CsvTable& table, const IngestConfig& config);

/// Serializes records in the pre-counted layout (integer county counts) or,
/// when `expand_county_lists` is set, one row per listed county. Expanding
/// requires every record to carry a county list.
void write_declarations(const std::filesystem::path& path,
                        const std::vector<DeclarationRecord>& records,
                        const DeclarationColumns& columns = {}, bool expand_county_lists = false);

struct TradeFlow {
    std::string origin;
    std::string destination;
    double value = 0.0;

    bool operator==(const TradeFlow&) const = default;
};

struct TradeFlowTable {
    std::vector<TradeFlow> entries;            // duplicates summed
    std::vector<std::size_t> self_flow_indices;  // entries with origin == destination
};

struct TradeFlowColumns {
    std::string origin = "origin";
    std::string destination = "destination";
    std::string value = "value";
};

TradeFlowTable parse_trade_flows(const std::filesystem::path& path,
                                 const TradeFlowColumns& columns = {}, char delimiter = ',');
TradeFlowTable parse_trade_flows(const CsvTable& table, const TradeFlowColumns& columns = {});

void write_trade_flows(const std::filesystem::path& path, const TradeFlowTable& table,
                       const TradeFlowColumns& columns = {});

/// State-by-month activity panel (index levels) on a strict monthly grid.
struct ActivityPanel {
    YearMonth start;
    std::vector<std::string> states;  // lexicographic
    Eigen::MatrixXd values;           // T x N

    Eigen::Index periods() const { return values.rows(); }
    Eigen::Index size() const { return values.cols(); }
    YearMonth month_at(Eigen::Index t) const { return add_months(start, static_cast<int>(t)); }
};

enum class PanelLayout { wide, long_format };

struct ActivityColumns {
    std::string date = "date";
    std::string state = "state";
    std::string value = "value";
};

struct ActivityConfig {
    PanelLayout layout = PanelLayout::wide;
    ActivityColumns columns;
    std::vector<std::string> state_universe;  // empty -> built-in
    YearMonth window_start{1990, 1};
    YearMonth window_end{2019, 12};
    char delimiter = ',';
};

ActivityPanel parse_activity_panel(const std::filesystem::path& path, const ActivityConfig& config);
ActivityPanel parse_activity_panel(const CsvTable& table, const ActivityConfig& config);

void write_activity_panel(const std::filesystem::path& path, const ActivityPanel& panel,
                          PanelLayout layout = PanelLayout::wide,
                          const std::string& comment = "");

enum class ClimateRegion { NE, SE, S, UMW, OV, NP, SW, W, NW, unassigned };

const char* to_string(ClimateRegion region);
std::optional<ClimateRegion> region_from_string(std::string_view name);
const std::vector<ClimateRegion>& all_regions();  // the nine assigned regions

/// Association state -> climate region; states absent from the map are
/// unassigned.
struct RegionMap {
    std::map<std::string, ClimateRegion> assignment;

    ClimateRegion region_of(const std::string& state) const;
    std::vector<std::string> members(ClimateRegion region,
                                     const std::vector<std::string>& labels) const;

    static RegionMap built_in();
};

/// Enforces the US invariants: exactly 48 states assigned, AK and HI
/// unassigned, every assigned state in the universe.
void validate_us_region_map(const RegionMap& map, const std::vector<std::string>& universe);

}  // namespace gvarkit

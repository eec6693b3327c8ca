#include "gvarkit/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "gvarkit/error.hpp"
#include "gvarkit/us_defaults.hpp"

namespace gvarkit {

const char* to_string(EventGroup group) {
    switch (group) {
        case EventGroup::winter: return "winter";
        case EventGroup::tropical_storm: return "tropical_storm";
        case EventGroup::storm: return "storm";
        case EventGroup::fire: return "fire";
        case EventGroup::flood: return "flood";
        case EventGroup::drought: return "drought";
        case EventGroup::non_weather: return "non_weather";
    }
    return "non_weather";
}

std::optional<EventGroup> event_group_from_string(std::string_view name) {
    static const std::map<std::string_view, EventGroup> lookup = {
        {"winter", EventGroup::winter},
        {"tropical_storm", EventGroup::tropical_storm},
        {"storm", EventGroup::storm},
        {"fire", EventGroup::fire},
        {"flood", EventGroup::flood},
        {"drought", EventGroup::drought},
        {"non_weather", EventGroup::non_weather}};
    auto it = lookup.find(name);
    if (it == lookup.end()) return std::nullopt;
    return it->second;
}

const std::set<EventGroup>& weather_event_groups() {
    static const std::set<EventGroup> groups = {
        EventGroup::winter, EventGroup::tropical_storm, EventGroup::storm,
        EventGroup::fire,   EventGroup::flood,          EventGroup::drought};
    return groups;
}

EventGroup IncidentTaxonomy::classify(const std::string& raw_label) const {
    auto it = groups.find(raw_label);
    return it == groups.end() ? EventGroup::non_weather : it->second;
}

IncidentTaxonomy IncidentTaxonomy::built_in() {
    IncidentTaxonomy taxonomy;
    for (const auto& [label, group] : default_incident_taxonomy()) {
        taxonomy.groups[label] = *event_group_from_string(group);
    }
    return taxonomy;
}

namespace {

std::set<std::string> universe_set(const std::vector<std::string>& configured) {
    const auto& states = configured.empty() ? default_state_universe() : configured;
    return {states.begin(), states.end()};
}

bool parse_count(const std::string& text, int& out) {
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

DeclarationParse parse_declarations(const std::filesystem::path& path, const IngestConfig& config) {
    return parse_declarations(read_delimited(path, config.delimiter), config);
}

DeclarationParse parse_declarations(const CsvTable& table, const IngestConfig& config) {
    const auto& cols = config.declaration_columns;
    std::size_t id_col = table.column(cols.id);
    std::size_t state_col = table.column(cols.state);
    std::size_t type_col = table.column(cols.incident_type);
    std::size_t begin_col = table.column(cols.begin_date);
    auto end_col = table.find_column(cols.end_date);
    auto count_col = table.find_column(cols.counties);
    auto county_col = table.find_column(cols.county_name);
    if (!count_col && !county_col) {
        fail(Errc::missing_column,
             "need either '" + cols.counties + "' or '" + cols.county_name + "'");
    }

    auto universe = universe_set(config.state_universe);

    DeclarationParse out;
    std::set<std::string> unmapped_labels;
    // Per-county layout groups rows by (id, state); ordered by first appearance.
    std::vector<DeclarationRecord> records;
    std::map<std::pair<std::string, std::string>, std::size_t> group_index;

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        std::size_t row_number = r + 1;
        auto field = [&](std::size_t c) -> const std::string& {
            static const std::string empty;
            return c < row.size() ? row[c] : empty;
        };

        const std::string& state = field(state_col);
        if (!universe.count(state)) {
            out.rejects.push_back({row_number, "unknown state code '" + state + "'"});
            continue;
        }
        auto begin = parse_date(field(begin_col));
        if (!begin) {
            out.rejects.push_back({row_number, "unparseable begin date '" + field(begin_col) + "'"});
            continue;
        }
        std::optional<Date> end;
        if (end_col && !field(*end_col).empty()) {
            end = parse_date(field(*end_col));
            if (!end) {
                out.rejects.push_back({row_number, "unparseable end date '" + field(*end_col) + "'"});
                continue;
            }
            if (*end < *begin) {
                out.rejects.push_back({row_number, "end date precedes begin date"});
                continue;
            }
        }

        const std::string& label = field(type_col);
        if (!config.taxonomy.contains(label)) unmapped_labels.insert(label);

        if (count_col) {
            int count = 0;
            if (!parse_count(field(*count_col), count)) {
                out.rejects.push_back({row_number, "unparseable county count '" + field(*count_col) + "'"});
                continue;
            }
            if (count < 0) {
                out.rejects.push_back({row_number, "negative county count"});
                continue;
            }
            records.push_back({field(id_col), state, label, *begin, end, count, std::nullopt});
        } else {
            auto key = std::make_pair(field(id_col), state);
            auto it = group_index.find(key);
            if (it == group_index.end()) {
                group_index.emplace(key, records.size());
                records.push_back({field(id_col), state, label, *begin, end,
                                   0, std::vector<std::string>{}});
                it = group_index.find(key);
            }
            auto& rec = records[it->second];
            const std::string& county = field(*county_col);
            auto& names = *rec.county_names;
            if (!county.empty() &&
                std::find(names.begin(), names.end(), county) == names.end()) {
                names.push_back(county);
            }
            rec.counties_hit = static_cast<int>(names.size());
        }
        ++out.accepted_rows;
    }

    for (const auto& label : unmapped_labels) {
        out.warnings.push_back("incident type '" + label + "' not in taxonomy; treated as non_weather");
    }
    out.records = std::move(records);
    return out;
}

void write_declarations(const std::filesystem::path& path,
                        const std::vector<DeclarationRecord>& records,
                        const DeclarationColumns& columns, bool expand_county_lists) {
    CsvTable table;
    table.header = {columns.id, columns.state, columns.incident_type, columns.begin_date,
                    columns.end_date};
    table.header.push_back(expand_county_lists ? columns.county_name : columns.counties);
    for (const auto& rec : records) {
        std::string end = rec.end_date ? to_string(*rec.end_date) : "";
        if (expand_county_lists) {
            if (!rec.county_names) {
                fail(Errc::missing_column,
                     "record " + rec.declaration_id + " has no county list to expand");
            }
            for (const auto& county : *rec.county_names) {
                table.rows.push_back({rec.declaration_id, rec.state, rec.incident_type,
                                      to_string(rec.begin_date), end, county});
            }
        } else {
            table.rows.push_back({rec.declaration_id, rec.state, rec.incident_type,
                                  to_string(rec.begin_date), end,
                                  std::to_string(rec.counties_hit)});
        }
    }
    write_delimited(path, table);
}

TradeFlowTable parse_trade_flows(const std::filesystem::path& path, const TradeFlowColumns& columns,
                                 char delimiter) {
    return parse_trade_flows(read_delimited(path, delimiter), columns);
}

TradeFlowTable parse_trade_flows(const CsvTable& table, const TradeFlowColumns& columns) {
    std::size_t origin_col = table.column(columns.origin);
    std::size_t dest_col = table.column(columns.destination);
    std::size_t value_col = table.column(columns.value);

    TradeFlowTable out;
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    for (const auto& row : table.rows) {
        if (row.size() <= std::max({origin_col, dest_col, value_col})) {
            fail(Errc::missing_column, "short row in trade-flow table");
        }
        double value = parse_double(row[value_col]);
        if (value < 0.0) {
            fail(Errc::negative_value,
                 "negative flow " + row[origin_col] + "->" + row[dest_col]);
        }
        auto key = std::make_pair(row[origin_col], row[dest_col]);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, out.entries.size());
            out.entries.push_back({row[origin_col], row[dest_col], value});
        } else {
            out.entries[it->second].value += value;
        }
    }
    for (std::size_t i = 0; i < out.entries.size(); ++i) {
        if (out.entries[i].origin == out.entries[i].destination) {
            out.self_flow_indices.push_back(i);
        }
    }
    return out;
}

void write_trade_flows(const std::filesystem::path& path, const TradeFlowTable& table,
                       const TradeFlowColumns& columns) {
    CsvTable out;
    out.header = {columns.origin, columns.destination, columns.value};
    for (const auto& flow : table.entries) {
        out.rows.push_back({flow.origin, flow.destination, format_double(flow.value)});
    }
    write_delimited(path, out);
}

namespace {

ActivityPanel assemble_panel(const std::vector<std::string>& states, YearMonth start,
                             int periods,
                             const std::map<std::pair<int, std::string>, double>& cells) {
    ActivityPanel panel;
    panel.start = start;
    panel.states = states;
    panel.values.resize(periods, static_cast<Eigen::Index>(states.size()));
    for (int t = 0; t < periods; ++t) {
        for (std::size_t j = 0; j < states.size(); ++j) {
            auto it = cells.find({t, states[j]});
            if (it == cells.end()) {
                fail(Errc::interior_gap, "missing observation for " + states[j] + " at " +
                                             to_string(add_months(start, t)));
            }
            panel.values(t, static_cast<Eigen::Index>(j)) = it->second;
        }
    }
    return panel;
}

}  // namespace

ActivityPanel parse_activity_panel(const std::filesystem::path& path, const ActivityConfig& config) {
    return parse_activity_panel(read_delimited(path, config.delimiter), config);
}

ActivityPanel parse_activity_panel(const CsvTable& table, const ActivityConfig& config) {
    if (config.window_end < config.window_start) {
        fail(Errc::window_empty, "window end precedes window start");
    }
    auto universe = universe_set(config.state_universe);
    std::vector<std::string> states(universe.begin(), universe.end());

    // Collect (month index within window, state) -> value, then check coverage.
    std::map<std::pair<int, std::string>, double> cells;
    YearMonth lo = config.window_start;
    YearMonth hi = config.window_end;
    YearMonth seen_min{0, 1};
    YearMonth seen_max{0, 1};
    bool any = false;

    auto record_cell = [&](YearMonth ym, const std::string& state, const std::string& raw) {
        if (!universe.count(state)) {
            fail(Errc::unknown_state, "state '" + state + "' not in configured universe");
        }
        if (ym < lo || hi < ym) return;
        if (!any || ym < seen_min) seen_min = ym;
        if (!any || seen_max < ym) seen_max = ym;
        any = true;
        cells[{months_between(lo, ym), state}] = parse_double(raw);
    };

    if (config.layout == PanelLayout::wide) {
        std::size_t date_col = table.column(config.columns.date);
        for (const auto& row : table.rows) {
            auto ym = parse_year_month(row[date_col]);
            if (!ym) fail(Errc::malformed_date, "bad date '" + row[date_col] + "'");
            for (std::size_t c = 0; c < table.header.size(); ++c) {
                if (c == date_col) continue;
                if (c >= row.size()) fail(Errc::interior_gap, "short row at " + to_string(*ym));
                record_cell(*ym, table.header[c], row[c]);
            }
        }
    } else {
        std::size_t date_col = table.column(config.columns.date);
        std::size_t state_col = table.column(config.columns.state);
        std::size_t value_col = table.column(config.columns.value);
        for (const auto& row : table.rows) {
            auto ym = parse_year_month(row[date_col]);
            if (!ym) fail(Errc::malformed_date, "bad date '" + row[date_col] + "'");
            record_cell(*ym, row[state_col], row[value_col]);
        }
    }

    if (!any) fail(Errc::window_empty, "no observations inside the configured window");

    int periods = months_between(seen_min, seen_max) + 1;
    // Gaps between seen_min and seen_max (for any state) are interior gaps;
    // assemble_panel reports the first one it finds.
    std::map<std::pair<int, std::string>, double> shifted;
    int offset = months_between(lo, seen_min);
    for (auto& [key, value] : cells) shifted[{key.first - offset, key.second}] = value;
    return assemble_panel(states, seen_min, periods, shifted);
}

void write_activity_panel(const std::filesystem::path& path, const ActivityPanel& panel,
                          PanelLayout layout, const std::string& comment) {
    CsvTable table;
    if (layout == PanelLayout::wide) {
        table.header.push_back("date");
        for (const auto& s : panel.states) table.header.push_back(s);
        for (Eigen::Index t = 0; t < panel.periods(); ++t) {
            std::vector<std::string> row;
            row.push_back(to_string(panel.month_at(t)));
            for (Eigen::Index j = 0; j < panel.size(); ++j) {
                row.push_back(format_double(panel.values(t, j)));
            }
            table.rows.push_back(std::move(row));
        }
    } else {
        table.header = {"date", "state", "value"};
        for (Eigen::Index t = 0; t < panel.periods(); ++t) {
            for (Eigen::Index j = 0; j < panel.size(); ++j) {
                table.rows.push_back({to_string(panel.month_at(t)),
                                      panel.states[static_cast<std::size_t>(j)],
                                      format_double(panel.values(t, j))});
            }
        }
    }
    write_delimited(path, table, ',', comment);
}

const char* to_string(ClimateRegion region) {
    switch (region) {
        case ClimateRegion::NE: return "NE";
        case ClimateRegion::SE: return "SE";
        case ClimateRegion::S: return "S";
        case ClimateRegion::UMW: return "UMW";
        case ClimateRegion::OV: return "OV";
        case ClimateRegion::NP: return "NP";
        case ClimateRegion::SW: return "SW";
        case ClimateRegion::W: return "W";
        case ClimateRegion::NW: return "NW";
        case ClimateRegion::unassigned: return "unassigned";
    }
    return "unassigned";
}

std::optional<ClimateRegion> region_from_string(std::string_view name) {
    for (ClimateRegion r : all_regions()) {
        if (name == to_string(r)) return r;
    }
    if (name == "unassigned") return ClimateRegion::unassigned;
    return std::nullopt;
}

const std::vector<ClimateRegion>& all_regions() {
    static const std::vector<ClimateRegion> regions = {
        ClimateRegion::NE, ClimateRegion::SE, ClimateRegion::S,
        ClimateRegion::UMW, ClimateRegion::OV, ClimateRegion::NP,
        ClimateRegion::SW, ClimateRegion::W, ClimateRegion::NW};
    return regions;
}

ClimateRegion RegionMap::region_of(const std::string& state) const {
    auto it = assignment.find(state);
    return it == assignment.end() ? ClimateRegion::unassigned : it->second;
}

std::vector<std::string> RegionMap::members(ClimateRegion region,
                                            const std::vector<std::string>& labels) const {
    std::vector<std::string> out;
    for (const auto& label : labels) {
        if (region_of(label) == region) out.push_back(label);
    }
    return out;
}

RegionMap RegionMap::built_in() {
    RegionMap map;
    for (const auto& [state, region] : default_region_assignment()) {
        map.assignment[state] = *region_from_string(region);
    }
    return map;
}

void validate_us_region_map(const RegionMap& map, const std::vector<std::string>& universe) {
    std::set<std::string> in_universe(universe.begin(), universe.end());
    int assigned = 0;
    for (const auto& [state, region] : map.assignment) {
        if (!in_universe.count(state)) {
            fail(Errc::unknown_state, "region map assigns unknown state '" + state + "'");
        }
        if (region != ClimateRegion::unassigned) ++assigned;
    }
    if (assigned != 48) {
        fail(Errc::config_error,
             "region map must assign exactly 48 states, got " + std::to_string(assigned));
    }
    for (const char* island : {"AK", "HI"}) {
        if (map.region_of(island) != ClimateRegion::unassigned) {
            fail(Errc::config_error, std::string(island) + " must stay unassigned");
        }
    }
}

}  // namespace gvarkit

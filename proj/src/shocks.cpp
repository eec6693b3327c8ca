#include "gvarkit/shocks.hpp"

#include <algorithm>
#include <cmath>

#include "gvarkit/error.hpp"
#include "gvarkit/us_defaults.hpp"

namespace gvarkit {

std::vector<StateMeta> built_in_state_meta() {
    std::vector<StateMeta> meta;
    for (const auto& state : default_state_universe()) {
        meta.push_back({state, default_state_counties().at(state)});
    }
    return meta;
}

ShockPanel build_state_shocks(const std::vector<DeclarationRecord>& records,
                              const std::vector<StateMeta>& meta,
                              const std::set<EventGroup>& filter,
                              const IncidentTaxonomy& taxonomy, YearMonth window_start,
                              YearMonth window_end) {
    if (filter.empty()) fail(Errc::empty_filter, "event-group filter is empty");
    if (window_end < window_start) fail(Errc::window_empty, "window end precedes start");

    std::map<std::string, int> state_index;
    std::map<std::string, int> counties;
    for (std::size_t i = 0; i < meta.size(); ++i) {
        if (meta[i].counties < 1) {
            fail(Errc::inconsistent_meta, meta[i].state + " has no counties");
        }
        state_index[meta[i].state] = static_cast<int>(i);
        counties[meta[i].state] = meta[i].counties;
    }

    int periods = months_between(window_start, window_end) + 1;
    int n = static_cast<int>(meta.size());

    ShockPanel panel;
    panel.start = window_start;
    for (const auto& m : meta) panel.states.push_back(m.state);
    panel.s = Eigen::MatrixXd::Zero(periods, n);
    panel.hit = Eigen::MatrixXi::Zero(periods, n);
    panel.emergency = Eigen::MatrixXi::Zero(periods, n);

    // Distinct counties per state-month where lists exist; summed integer
    // counts otherwise. Mixed inputs add the two parts before capping.
    std::map<std::pair<int, int>, std::set<std::string>> named;
    std::map<std::pair<int, int>, int> counted;

    for (const auto& rec : records) {
        auto it = state_index.find(rec.state);
        if (it == state_index.end()) {
            fail(Errc::unknown_state, "declaration " + rec.declaration_id +
                                          " references unknown state '" + rec.state + "'");
        }
        if (!filter.count(taxonomy.classify(rec.incident_type))) continue;
        YearMonth ym = rec.begin_date.ym();
        if (ym < window_start || window_end < ym) continue;
        auto key = std::make_pair(months_between(window_start, ym), it->second);
        if (rec.county_names) {
            auto& names = named[key];
            names.insert(rec.county_names->begin(), rec.county_names->end());
        } else {
            counted[key] += rec.counties_hit;
        }
    }

    auto add_hits = [&](std::pair<int, int> key, int count) {
        int total = panel.hit(key.first, key.second) + count;
        panel.hit(key.first, key.second) = std::min(total, counties[meta[key.second].state]);
    };
    for (const auto& [key, names] : named) add_hits(key, static_cast<int>(names.size()));
    for (const auto& [key, count] : counted) add_hits(key, count);

    for (int t = 0; t < periods; ++t) {
        for (int i = 0; i < n; ++i) {
            int h = panel.hit(t, i);
            panel.emergency(t, i) = h > 0 ? 1 : 0;
            panel.s(t, i) = static_cast<double>(h) / counties[meta[i].state];
        }
    }
    panel.national = build_national_shock(panel, meta);
    return panel;
}

Eigen::VectorXd build_national_shock(const ShockPanel& panel, const std::vector<StateMeta>& meta) {
    if (static_cast<Eigen::Index>(meta.size()) != panel.size()) {
        fail(Errc::inconsistent_meta, "metadata does not match panel states");
    }
    long total_counties = 0;
    for (std::size_t i = 0; i < meta.size(); ++i) {
        if (meta[i].state != panel.states[i] || meta[i].counties < 1) {
            fail(Errc::inconsistent_meta, "metadata does not match panel states");
        }
        total_counties += meta[i].counties;
    }
    Eigen::VectorXd national(panel.periods());
    for (Eigen::Index t = 0; t < panel.periods(); ++t) {
        long hits = 0;
        for (Eigen::Index i = 0; i < panel.size(); ++i) {
            hits += static_cast<long>(panel.emergency(t, i)) * panel.hit(t, i);
        }
        national(t) = static_cast<double>(hits) / static_cast<double>(total_counties);
    }
    return national;
}

const char* to_string(Season season) {
    switch (season) {
        case Season::DJF: return "DJF";
        case Season::MAM: return "MAM";
        case Season::JJA: return "JJA";
        case Season::SON: return "SON";
    }
    return "DJF";
}

Season season_of_month(int month) {
    if (month == 12 || month <= 2) return Season::DJF;
    if (month <= 5) return Season::MAM;
    if (month <= 8) return Season::JJA;
    return Season::SON;
}

DeclarationSummary summarize_declarations(const std::vector<DeclarationRecord>& records,
                                          const IncidentTaxonomy& taxonomy) {
    DeclarationSummary summary;
    for (const auto& rec : records) {
        EventGroup group = taxonomy.classify(rec.incident_type);
        if (group == EventGroup::non_weather) {
            ++summary.total_non_weather;
            continue;
        }
        ++summary.total_weather;
        ++summary.by_group[group];
        ++summary.by_season[season_of_month(rec.begin_date.month)];
        ++summary.by_state_group[rec.state][group];
    }
    return summary;
}

void write_shock_panel(const std::filesystem::path& path, const ShockPanel& panel,
                       const std::string& comment) {
    CsvTable table;
    table.header = {"date", "state", "s"};
    for (Eigen::Index t = 0; t < panel.periods(); ++t) {
        for (Eigen::Index i = 0; i < panel.size(); ++i) {
            table.rows.push_back({to_string(panel.month_at(t)),
                                  panel.states[static_cast<std::size_t>(i)],
                                  format_double(panel.s(t, i))});
        }
    }
    write_delimited(path, table, ',', comment);
}

void write_national_shock(const std::filesystem::path& path, const ShockPanel& panel,
                          const std::string& comment) {
    CsvTable table;
    table.header = {"date", "s"};
    for (Eigen::Index t = 0; t < panel.periods(); ++t) {
        table.rows.push_back({to_string(panel.month_at(t)), format_double(panel.national(t))});
    }
    write_delimited(path, table, ',', comment);
}

ShockPanel read_shock_panel(const std::filesystem::path& path, const std::vector<StateMeta>& meta) {
    CsvTable table = read_delimited(path);
    std::size_t date_col = table.column("date");
    std::size_t state_col = table.column("state");
    std::size_t value_col = table.column("s");

    std::map<std::string, int> state_index;
    for (std::size_t i = 0; i < meta.size(); ++i) state_index[meta[i].state] = static_cast<int>(i);

    YearMonth lo{0, 1}, hi{0, 1};
    bool any = false;
    std::map<std::pair<int, int>, double> cells;  // linear month, state -> s
    for (const auto& row : table.rows) {
        auto ym = parse_year_month(row[date_col]);
        if (!ym) fail(Errc::malformed_date, "bad date '" + row[date_col] + "'");
        auto it = state_index.find(row[state_col]);
        if (it == state_index.end()) {
            fail(Errc::unknown_state, "state '" + row[state_col] + "' not in metadata");
        }
        if (!any || *ym < lo) lo = *ym;
        if (!any || hi < *ym) hi = *ym;
        any = true;
        cells[{ym->year * 12 + ym->month, it->second}] = parse_double(row[value_col]);
    }
    if (!any) fail(Errc::window_empty, "shock panel file has no rows");

    int periods = months_between(lo, hi) + 1;
    int n = static_cast<int>(meta.size());
    ShockPanel panel;
    panel.start = lo;
    for (const auto& m : meta) panel.states.push_back(m.state);
    panel.s = Eigen::MatrixXd::Zero(periods, n);
    panel.hit = Eigen::MatrixXi::Zero(periods, n);
    panel.emergency = Eigen::MatrixXi::Zero(periods, n);
    for (const auto& [key, value] : cells) {
        int t = key.first - (lo.year * 12 + lo.month);
        panel.s(t, key.second) = value;
        panel.hit(t, key.second) =
            static_cast<int>(std::llround(value * meta[static_cast<std::size_t>(key.second)].counties));
        panel.emergency(t, key.second) = value > 0.0 ? 1 : 0;
    }
    panel.national = build_national_shock(panel, meta);
    return panel;
}

}  // namespace gvarkit

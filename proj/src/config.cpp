#include "gvarkit/config.hpp"

#include <json.hpp>

#include <fstream>

#include "gvarkit/error.hpp"
#include "gvarkit/us_defaults.hpp"

namespace gvarkit {

namespace {

using nlohmann::json;

YearMonth require_month(const json& j, const char* key) {
    auto ym = parse_year_month(j.at(key).get<std::string>());
    if (!ym) fail(Errc::malformed_date, std::string("bad month in config key '") + key + "'");
    return *ym;
}

}  // namespace

RunConfig default_run_config() {
    RunConfig config;
    config.state_universe = default_state_universe();
    config.ingest.state_universe = config.state_universe;
    config.activity_config.state_universe = config.state_universe;
    config.meta = built_in_state_meta();
    config.region_map = RegionMap::built_in();
    config.event_filter = weather_event_groups();
    config.borders = default_state_borders();
    return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::input_missing, "cannot open config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(Errc::config_error, std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig config = default_run_config();
    config.raw_json = j.dump();

    try {
        if (j.contains("inputs")) {
            const auto& inputs = j["inputs"];
            auto dir = path.parent_path();
            auto resolve = [&](const char* key) -> std::filesystem::path {
                if (!inputs.contains(key)) return {};
                std::filesystem::path p = inputs[key].get<std::string>();
                return p.is_absolute() ? p : dir / p;
            };
            config.declarations = resolve("declarations");
            config.trade_flows = resolve("trade_flows");
            config.activity = resolve("activity");
            config.shock_panel = resolve("shock_panel");
            config.weight_matrix = resolve("weight_matrix");
        }

        if (j.contains("delimiter")) {
            std::string d = j["delimiter"].get<std::string>();
            if (d.size() != 1) fail(Errc::config_error, "delimiter must be one character");
            config.ingest.delimiter = d[0];
            config.activity_config.delimiter = d[0];
        }

        if (j.contains("columns")) {
            const auto& cols = j["columns"];
            if (cols.contains("declarations")) {
                const auto& d = cols["declarations"];
                auto& dc = config.ingest.declaration_columns;
                if (d.contains("id")) dc.id = d["id"];
                if (d.contains("state")) dc.state = d["state"];
                if (d.contains("incident_type")) dc.incident_type = d["incident_type"];
                if (d.contains("begin_date")) dc.begin_date = d["begin_date"];
                if (d.contains("end_date")) dc.end_date = d["end_date"];
                if (d.contains("counties")) dc.counties = d["counties"];
                if (d.contains("county_name")) dc.county_name = d["county_name"];
            }
            if (cols.contains("trade")) {
                const auto& t = cols["trade"];
                if (t.contains("origin")) config.trade_columns.origin = t["origin"];
                if (t.contains("destination")) config.trade_columns.destination = t["destination"];
                if (t.contains("value")) config.trade_columns.value = t["value"];
            }
            if (cols.contains("activity")) {
                const auto& a = cols["activity"];
                auto& ac = config.activity_config.columns;
                if (a.contains("date")) ac.date = a["date"];
                if (a.contains("state")) ac.state = a["state"];
                if (a.contains("value")) ac.value = a["value"];
            }
        }

        if (j.contains("activity_layout")) {
            std::string layout = j["activity_layout"].get<std::string>();
            if (layout == "wide") {
                config.activity_config.layout = PanelLayout::wide;
            } else if (layout == "long") {
                config.activity_config.layout = PanelLayout::long_format;
            } else {
                fail(Errc::config_error, "activity_layout must be 'wide' or 'long'");
            }
        }

        if (j.contains("window")) {
            config.activity_config.window_start = require_month(j["window"], "start");
            config.activity_config.window_end = require_month(j["window"], "end");
        }

        if (j.contains("state_universe")) {
            config.state_universe = j["state_universe"].get<std::vector<std::string>>();
            std::sort(config.state_universe.begin(), config.state_universe.end());
            config.ingest.state_universe = config.state_universe;
            config.activity_config.state_universe = config.state_universe;
            config.validate_region_map = false;  // synthetic universes skip US checks
        }

        if (j.contains("state_counties")) {
            config.meta.clear();
            std::map<std::string, int> counts =
                j["state_counties"].get<std::map<std::string, int>>();
            for (const auto& state : config.state_universe) {
                auto it = counts.find(state);
                if (it == counts.end()) {
                    fail(Errc::config_error, "state_counties missing " + state);
                }
                config.meta.push_back({state, it->second});
            }
        } else if (j.contains("state_universe")) {
            fail(Errc::config_error, "a custom state_universe needs state_counties");
        }

        if (j.contains("taxonomy")) {
            IncidentTaxonomy taxonomy;
            for (const auto& [label, group] : j["taxonomy"].items()) {
                auto g = event_group_from_string(group.get<std::string>());
                if (!g) fail(Errc::config_error, "unknown event group for '" + label + "'");
                taxonomy.groups[label] = *g;
            }
            config.ingest.taxonomy = taxonomy;
        }

        if (j.contains("region_map")) {
            RegionMap map;
            for (const auto& [state, region] : j["region_map"].items()) {
                auto r = region_from_string(region.get<std::string>());
                if (!r) fail(Errc::config_error, "unknown region for '" + state + "'");
                map.assignment[state] = *r;
            }
            config.region_map = map;
        }
        if (j.contains("validate_region_map")) {
            config.validate_region_map = j["validate_region_map"].get<bool>();
        }

        if (j.contains("event_filter")) {
            config.event_filter.clear();
            for (const auto& name : j["event_filter"]) {
                auto g = event_group_from_string(name.get<std::string>());
                if (!g || *g == EventGroup::non_weather) {
                    fail(Errc::config_error, "event_filter entries must be weather groups");
                }
                config.event_filter.insert(*g);
            }
            if (config.event_filter.empty()) fail(Errc::config_error, "event_filter is empty");
        }

        if (j.contains("difference")) config.difference = j["difference"].get<bool>();

        if (j.contains("lags")) {
            const auto& lags = j["lags"];
            if (lags.contains("select_by_bic")) {
                config.lags.select_by_bic = lags["select_by_bic"].get<bool>();
            }
            if (lags.contains("max")) config.lags.max_lags = lags["max"].get<int>();
            if (lags.contains("own")) config.lags.fixed_own = lags["own"].get<int>();
            if (lags.contains("foreign")) config.lags.fixed_foreign = lags["foreign"].get<int>();
        }

        if (j.contains("weights")) {
            const auto& weights = j["weights"];
            if (weights.contains("source")) {
                config.weight_source = weights["source"].get<std::string>();
                if (config.weight_source != "trade" && config.weight_source != "adjacency" &&
                    config.weight_source != "file") {
                    fail(Errc::config_error, "weights.source must be trade, adjacency or file");
                }
            }
            if (weights.contains("island_fallback")) {
                config.island_fallback =
                    weights["island_fallback"].get<std::map<std::string, std::string>>();
            }
            if (weights.contains("borders")) {
                config.borders.clear();
                for (const auto& pair : weights["borders"]) {
                    config.borders.emplace_back(pair.at(0).get<std::string>(),
                                                pair.at(1).get<std::string>());
                }
            }
        }

        if (j.contains("region_weights")) {
            config.region_weights = j["region_weights"].get<std::map<std::string, double>>();
        }

        if (j.contains("horizon")) config.horizon = j["horizon"].get<int>();
        if (j.contains("headline_horizon")) {
            config.headline_horizon = j["headline_horizon"].get<int>();
        }
        if (j.contains("condition_bound")) {
            config.condition_bound = j["condition_bound"].get<double>();
        }

        if (j.contains("bootstrap")) {
            const auto& b = j["bootstrap"];
            if (b.contains("replications")) {
                config.bootstrap.replications = b["replications"].get<int>();
            }
            if (b.contains("percentiles")) {
                config.bootstrap.percentiles = b["percentiles"].get<std::vector<double>>();
            }
            if (b.contains("seed")) config.bootstrap.seed = b["seed"].get<std::uint64_t>();
            if (b.contains("allow_unstable")) {
                config.bootstrap.allow_unstable = b["allow_unstable"].get<bool>();
            }
            if (b.contains("threads")) config.bootstrap.threads = b["threads"].get<int>();
        }

        if (j.contains("compare")) {
            const auto& c = j["compare"];
            if (c.contains("bias_iterations")) {
                config.compare_bias_iterations = c["bias_iterations"].get<int>();
            }
            if (c.contains("bias_sims")) config.compare_bias_sims = c["bias_sims"].get<int>();
        }
    } catch (const json::exception& e) {
        fail(Errc::config_error, std::string("config error: ") + e.what());
    }

    config.bootstrap.horizon = config.horizon;
    return config;
}

}  // namespace gvarkit

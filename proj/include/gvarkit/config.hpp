#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gvarkit/bootstrap.hpp"
#include "gvarkit/gvar.hpp"
#include "gvarkit/ingest.hpp"
#include "gvarkit/shocks.hpp"

namespace gvarkit {

/// Everything a CLI run needs, resolved from the JSON config file plus
/// built-in defaults.
struct RunConfig {
    // Input files. Shocks come from declarations unless a pre-built shock
    // panel is supplied; weights from trade flows, a border list, or a file.
    std::filesystem::path declarations;
    std::filesystem::path trade_flows;
    std::filesystem::path activity;
    std::filesystem::path shock_panel;
    std::filesystem::path weight_matrix;

    IngestConfig ingest;
    ActivityConfig activity_config;
    TradeFlowColumns trade_columns;

    std::vector<std::string> state_universe;
    std::vector<StateMeta> meta;
    RegionMap region_map;
    bool validate_region_map = true;  // enforce the 48-state US invariants

    std::set<EventGroup> event_filter;  // default: all six weather groups

    bool difference = true;
    LagChoice lags;

    std::string weight_source = "trade";  // trade | adjacency | file
    std::vector<std::pair<std::string, std::string>> borders;
    std::map<std::string, std::string> island_fallback = {{"AK", "WA"}, {"HI", "CA"}};

    std::optional<std::map<std::string, double>> region_weights;

    int horizon = 48;
    int headline_horizon = 12;
    double condition_bound = 1e10;

    BootstrapConfig bootstrap;

    int compare_bias_iterations = 2;
    int compare_bias_sims = 200;

    std::string raw_json;  // canonical dump, hashed into the manifest
};

RunConfig load_run_config(const std::filesystem::path& path);

/// Defaults only (no file): built-in universe, counties, taxonomy, regions.
RunConfig default_run_config();

}  // namespace gvarkit

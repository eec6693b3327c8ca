#include "gvarkit/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>

#include "gvarkit/alternatives.hpp"
#include "gvarkit/bootstrap.hpp"
#include "gvarkit/config.hpp"
#include "gvarkit/error.hpp"
#include "gvarkit/manifest.hpp"
#include "gvarkit/synth.hpp"

namespace gvarkit {

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
    std::string config_path;
    std::string out_dir = "out";
    bool adjacency = false;
    std::string event_group;
    std::string region;
    bool all_regions = false;
    std::string state;
    double intensity = 1.0;
    int horizon = -1;       // -1 -> config value
    int replications = -1;  // -1 -> config value
    long long seed = -1;
};

/// Inputs loaded and validated for one run.
struct Pipeline {
    RunConfig config;
    ActivityPanel activity;   // levels
    ShockPanel shocks;
    WeightScheme scheme;
    std::string scheme_kind;
    RunManifest manifest;

    // Model-scale data: y is the estimation panel (differenced by default),
    // s the shock rows aligned with it.
    Eigen::MatrixXd y;
    Eigen::MatrixXd s;
    YearMonth y_start{0, 1};
};

std::set<EventGroup> resolve_filter(const RunConfig& config, const std::string& event_group) {
    if (event_group.empty()) return config.event_filter;
    auto g = event_group_from_string(event_group);
    if (!g || *g == EventGroup::non_weather) {
        fail(Errc::config_error, "unknown event group '" + event_group + "'");
    }
    return {*g};
}

Eigen::MatrixXd slice_shocks(const ShockPanel& shocks, const std::vector<std::string>& states,
                             YearMonth start, Eigen::Index periods) {
    if (shocks.states != states) {
        fail(Errc::config_error, "shock panel states do not match the activity panel");
    }
    int offset = months_between(shocks.start, start);
    if (offset < 0 || offset + periods > shocks.periods()) {
        fail(Errc::config_error, "shock panel does not cover the estimation sample");
    }
    return shocks.s.middleRows(offset, periods);
}

Pipeline load_pipeline(const CommonOptions& opt, bool need_weights = true) {
    Pipeline p;
    if (opt.config_path.empty()) fail(Errc::config_error, "--config is required");
    p.config = load_run_config(opt.config_path);
    if (p.config.validate_region_map) {
        validate_us_region_map(p.config.region_map, p.config.state_universe);
    }

    p.manifest.config_hash = to_hex(fnv1a64(p.config.raw_json));
    p.manifest.window_start = to_string(p.config.activity_config.window_start);
    p.manifest.window_end = to_string(p.config.activity_config.window_end);
    p.manifest.seed = p.config.bootstrap.seed;

    // Shocks: pre-built panel or declarations.
    auto filter = resolve_filter(p.config, opt.event_group);
    if (!p.config.shock_panel.empty()) {
        if (!opt.event_group.empty()) {
            fail(Errc::config_error, "--event-group needs declaration inputs, not a shock panel");
        }
        p.manifest.input_digests["shock_panel"] = digest_file(p.config.shock_panel);
        p.shocks = read_shock_panel(p.config.shock_panel, p.config.meta);
    } else if (!p.config.declarations.empty()) {
        p.manifest.input_digests["declarations"] = digest_file(p.config.declarations);
        DeclarationParse parsed = parse_declarations(p.config.declarations, p.config.ingest);
        p.shocks = build_state_shocks(parsed.records, p.config.meta, filter,
                                      p.config.ingest.taxonomy,
                                      p.config.activity_config.window_start,
                                      p.config.activity_config.window_end);
    } else {
        fail(Errc::input_missing, "config must name either declarations or a shock_panel");
    }

    if (p.config.activity.empty()) fail(Errc::input_missing, "config must name an activity panel");
    p.manifest.input_digests["activity"] = digest_file(p.config.activity);
    p.activity = parse_activity_panel(p.config.activity, p.config.activity_config);

    if (need_weights) {
        std::string source = opt.adjacency ? "adjacency" : p.config.weight_source;
        p.scheme_kind = source;
        if (source == "trade") {
            if (p.config.trade_flows.empty()) {
                fail(Errc::input_missing, "config must name trade_flows for trade weights");
            }
            p.manifest.input_digests["trade_flows"] = digest_file(p.config.trade_flows);
            TradeFlowTable flows =
                parse_trade_flows(p.config.trade_flows, p.config.trade_columns,
                                  p.config.ingest.delimiter);
            p.scheme = trade_weights(flows, p.config.state_universe);
        } else if (source == "adjacency") {
            p.scheme = adjacency_weights(p.config.borders, p.config.state_universe,
                                         p.config.island_fallback);
        } else if (source == "file") {
            if (p.config.weight_matrix.empty()) {
                fail(Errc::input_missing, "config must name weight_matrix for file weights");
            }
            p.manifest.input_digests["weight_matrix"] = digest_file(p.config.weight_matrix);
            p.scheme = read_weight_matrix(p.config.weight_matrix);
            if (p.scheme.labels != p.config.state_universe) {
                fail(Errc::config_error, "weight matrix labels do not match the state universe");
            }
        }
        validate_weights(p.scheme);
        p.manifest.weight_scheme = p.scheme_kind;
    }

    // Model scale: first differences by default.
    if (p.config.difference) {
        p.y = difference_panel(p.activity.values);
        p.y_start = add_months(p.activity.start, 1);
    } else {
        p.y = p.activity.values;
        p.y_start = p.activity.start;
    }
    p.s = slice_shocks(p.shocks, p.activity.states, p.y_start, p.y.rows());
    return p;
}

GvarFit fit_model(Pipeline& p, std::ostream& out) {
    GvarFit fit = fit_gvar(p.y, p.s, p.scheme, p.config.lags);
    p.manifest.lag_order = fit.system.lag_order();
    for (const auto& warning : fit.warnings) out << "warning: " << warning << "\n";
    if (!p.config.difference) {
        Stability stab = stability(fit.system);
        if (!stab.stable) {
            out << "warning: levels specification has spectral radius "
                << format_double(stab.spectral_radius) << " >= 1\n";
        }
    }
    return fit;
}

fs::path prepare_out_dir(const CommonOptions& opt) {
    fs::path dir = opt.out_dir;
    fs::create_directories(dir);
    return dir;
}

void finish(const Pipeline& p, const CommonOptions& opt, const std::string& command) {
    RunManifest manifest = p.manifest;
    manifest.command = command;
    write_manifest(fs::path(opt.out_dir) / "manifest.json", manifest);
}

void write_matrix(const fs::path& path, const Eigen::MatrixXd& m,
                  const std::vector<std::string>& labels, const std::string& comment) {
    CsvTable table;
    table.header.push_back("unit");
    for (const auto& label : labels) table.header.push_back(label);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::vector<std::string> row;
        row.push_back(labels[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(format_double(m(i, j)));
        table.rows.push_back(std::move(row));
    }
    write_delimited(path, table, ',', comment);
}

void write_vector(const fs::path& path, const Eigen::VectorXd& v,
                  const std::vector<std::string>& labels, const std::string& value_name,
                  const std::string& comment) {
    CsvTable table;
    table.header = {"unit", value_name};
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        table.rows.push_back({labels[static_cast<std::size_t>(i)], format_double(v(i))});
    }
    write_delimited(path, table, ',', comment);
}

std::vector<ClimateRegion> scenario_origins(const CommonOptions& opt, const RunConfig& config) {
    if (opt.all_regions) {
        std::vector<ClimateRegion> origins;
        for (ClimateRegion r : all_regions()) {
            bool populated = false;
            for (const auto& state : config.state_universe) {
                if (config.region_map.region_of(state) == r) populated = true;
            }
            if (populated) origins.push_back(r);
        }
        return origins;
    }
    if (!opt.region.empty()) {
        auto r = region_from_string(opt.region);
        if (!r || *r == ClimateRegion::unassigned) {
            fail(Errc::unknown_region, "unknown region '" + opt.region + "'");
        }
        return {*r};
    }
    // Event-group runs default to the regions where that group concentrates.
    if (opt.event_group == "winter") {
        return {ClimateRegion::NE, ClimateRegion::OV, ClimateRegion::SE};
    }
    if (opt.event_group == "tropical_storm") {
        return {ClimateRegion::NE, ClimateRegion::SE, ClimateRegion::S};
    }
    fail(Errc::config_error, "pick a scenario with --region, --all-regions or --state");
}

std::optional<Eigen::VectorXd> aggregation_weights(const Pipeline& p) {
    if (!p.config.region_weights) return std::nullopt;
    Eigen::VectorXd w(static_cast<Eigen::Index>(p.config.state_universe.size()));
    for (std::size_t i = 0; i < p.config.state_universe.size(); ++i) {
        auto it = p.config.region_weights->find(p.config.state_universe[i]);
        if (it == p.config.region_weights->end()) {
            fail(Errc::weight_mismatch, "region_weights missing " + p.config.state_universe[i]);
        }
        w(static_cast<Eigen::Index>(i)) = it->second;
    }
    return w;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_shocks(const CommonOptions& opt, std::ostream& out) {
    Pipeline p = load_pipeline(opt, /*need_weights=*/false);
    fs::path dir = prepare_out_dir(opt);
    write_shock_panel(dir / "state_shocks.csv", p.shocks, p.manifest.reference());
    write_national_shock(dir / "national_shock.csv", p.shocks, p.manifest.reference());
    finish(p, opt, "shocks");
    out << "wrote " << (dir / "state_shocks.csv").string() << " and national series ("
        << p.shocks.periods() << " months x " << p.shocks.size() << " states)\n";
    return 0;
}

int cmd_summarize(const CommonOptions& opt, std::ostream& out) {
    if (opt.config_path.empty()) fail(Errc::config_error, "--config is required");
    RunConfig config = load_run_config(opt.config_path);
    if (config.declarations.empty()) {
        fail(Errc::input_missing, "summarize needs a declarations input");
    }
    DeclarationParse parsed = parse_declarations(config.declarations, config.ingest);
    DeclarationSummary summary = summarize_declarations(parsed.records, config.ingest.taxonomy);

    fs::path dir = prepare_out_dir(opt);
    std::string ref = "run " + to_hex(fnv1a64(config.raw_json));

    CsvTable by_group;
    by_group.header = {"event_group", "count"};
    for (const auto& [group, count] : summary.by_group) {
        by_group.rows.push_back({to_string(group), std::to_string(count)});
    }
    write_delimited(dir / "counts_by_group.csv", by_group, ',', ref);

    CsvTable by_season;
    by_season.header = {"season", "count"};
    for (const auto& [season, count] : summary.by_season) {
        by_season.rows.push_back({to_string(season), std::to_string(count)});
    }
    write_delimited(dir / "counts_by_season.csv", by_season, ',', ref);

    CsvTable by_state;
    by_state.header = {"state", "event_group", "count"};
    for (const auto& [state, groups] : summary.by_state_group) {
        for (const auto& [group, count] : groups) {
            by_state.rows.push_back({state, to_string(group), std::to_string(count)});
        }
    }
    write_delimited(dir / "counts_by_state_group.csv", by_state, ',', ref);

    CsvTable rejects;
    rejects.header = {"row", "reason"};
    for (const auto& reject : parsed.rejects) {
        rejects.rows.push_back({std::to_string(reject.row_number), reject.reason});
    }
    write_delimited(dir / "rejected_rows.csv", rejects, ',', ref);

    out << summary.total_weather << " weather-related declarations ("
        << summary.total_non_weather << " non-weather, " << parsed.rejects.size()
        << " rejected rows)\n";
    return 0;
}

int cmd_estimate(const CommonOptions& opt, std::ostream& out) {
    Pipeline p = load_pipeline(opt);
    GvarFit fit = fit_model(p, out);
    fs::path dir = prepare_out_dir(opt);
    std::string ref = p.manifest.reference();

    CsvTable coef;
    coef.header = {"state", "parameter", "estimate", "std_error"};
    for (std::size_t i = 0; i < fit.estimates.size(); ++i) {
        const auto& est = fit.estimates[i];
        const std::string& state = p.scheme.labels[i];
        auto push = [&](const std::string& name, double value, double se) {
            coef.rows.push_back({state, name, format_double(value), format_double(se)});
        };
        push("constant", est.intercept, est.intercept_se);
        for (int l = 0; l < est.spec.own_lags; ++l) {
            push("own_lag" + std::to_string(l + 1), est.own_lag(l), est.own_lag_se(l));
        }
        push("foreign_now", est.foreign_now, est.foreign_now_se);
        for (int l = 0; l < est.spec.foreign_lags; ++l) {
            push("foreign_lag" + std::to_string(l + 1), est.foreign_lag(l), est.foreign_lag_se(l));
        }
        push("shock", est.shock, est.shock_se);
    }
    write_delimited(dir / "coefficients.csv", coef, ',', ref);

    CsvTable lag_table;
    lag_table.header = {"state", "own_lags", "foreign_lags", "t_eff", "bic"};
    for (std::size_t i = 0; i < fit.estimates.size(); ++i) {
        const auto& est = fit.estimates[i];
        lag_table.rows.push_back({p.scheme.labels[i], std::to_string(est.spec.own_lags),
                                  std::to_string(est.spec.foreign_lags),
                                  std::to_string(est.t_eff), format_double(est.bic)});
    }
    write_delimited(dir / "lag_selection.csv", lag_table, ',', ref);

    // Diagnostics on the level series (unit roots, seasonality) and on the
    // model-scale series (weak-exogeneity direction checks).
    Eigen::MatrixXd foreign_levels = foreign_averages(p.activity.values, p.scheme.w);
    CsvTable diag;
    diag.header = {"state",           "adf_stat",       "adf_reject_5pct", "seasonality_f",
                   "seasonality_p",   "granger_out_f",  "granger_out_p",   "granger_in_f",
                   "granger_in_p"};
    for (Eigen::Index i = 0; i < p.activity.size(); ++i) {
        AdfResult adf = adf_test(p.activity.values.col(i), p.config.lags.max_lags);
        FTestResult season = seasonality_ftest(p.activity.values.col(i), 2,
                                               p.activity.start.month);
        GrangerResult granger =
            granger_test(p.activity.values.col(i), foreign_levels.col(i), 2);
        diag.rows.push_back({p.activity.states[static_cast<std::size_t>(i)],
                             format_double(adf.statistic), adf.reject_at_5pct ? "1" : "0",
                             format_double(season.statistic), format_double(season.p_value),
                             format_double(granger.y_to_foreign.statistic),
                             format_double(granger.y_to_foreign.p_value),
                             format_double(granger.foreign_to_y.statistic),
                             format_double(granger.foreign_to_y.p_value)});
    }
    write_delimited(dir / "diagnostics.csv", diag, ',', ref);

    finish(p, opt, "estimate");
    out << "estimated " << fit.estimates.size() << " state equations (lag order "
        << fit.system.lag_order() << ", effective sample " << fit.residuals.rows() << ")\n";
    return 0;
}

int cmd_gvar(const CommonOptions& opt, std::ostream& out) {
    Pipeline p = load_pipeline(opt);
    GvarFit fit = fit_model(p, out);
    fs::path dir = prepare_out_dir(opt);
    std::string ref = p.manifest.reference();
    const auto& labels = p.scheme.labels;

    write_matrix(dir / "G.csv", fit.system.stacked.g, labels, ref);
    for (int l = 0; l < fit.system.lag_order(); ++l) {
        write_matrix(dir / ("H" + std::to_string(l + 1) + ".csv"),
                     fit.system.stacked.h[static_cast<std::size_t>(l)], labels, ref);
        write_matrix(dir / ("F" + std::to_string(l + 1) + ".csv"),
                     fit.system.f[static_cast<std::size_t>(l)], labels, ref);
    }
    write_vector(dir / "theta.csv", fit.system.stacked.theta, labels, "theta", ref);
    write_vector(dir / "alpha.csv", fit.system.stacked.alpha, labels, "alpha", ref);
    write_vector(dir / "c.csv", fit.system.c, labels, "c", ref);
    write_matrix(dir / "Lambda.csv", fit.system.lambda, labels, ref);
    write_matrix(dir / "Sigma_eps.csv", fit.system.sigma_eps, labels, ref);
    write_weight_matrix(dir / "weights.csv", p.scheme, ref);

    Stability stab = stability(fit.system);
    CsvTable stability_table;
    stability_table.header = {"metric", "value"};
    stability_table.rows.push_back({"spectral_radius", format_double(stab.spectral_radius)});
    stability_table.rows.push_back({"stable", stab.stable ? "1" : "0"});
    stability_table.rows.push_back({"lag_order", std::to_string(fit.system.lag_order())});
    write_delimited(dir / "stability.csv", stability_table, ',', ref);

    nlohmann::json system_manifest;
    system_manifest["states"] = labels;
    system_manifest["lag_order"] = fit.system.lag_order();
    system_manifest["weight_scheme"] = p.scheme_kind;
    system_manifest["window"] = {{"start", to_string(p.y_start)},
                                 {"end", to_string(add_months(p.y_start,
                                                              static_cast<int>(p.y.rows()) - 1))}};
    system_manifest["difference"] = p.config.difference;
    std::ofstream(dir / "system.json") << system_manifest.dump(2) << "\n";

    finish(p, opt, "gvar");
    out << "solved system of " << labels.size() << " states, spectral radius "
        << format_double(stab.spectral_radius) << (stab.stable ? " (stable)\n" : " (NOT stable)\n");
    return 0;
}

void write_irf_table(const fs::path& path, const IrfResult& irf,
                     const std::vector<std::string>& labels, const std::string& ref) {
    CsvTable table;
    table.header = {"horizon", "unit", "difference", "cumulative"};
    for (int h = 0; h <= irf.horizons(); ++h) {
        for (Eigen::Index i = 0; i < irf.difference.cols(); ++i) {
            table.rows.push_back({std::to_string(h), labels[static_cast<std::size_t>(i)],
                                  format_double(irf.difference(h, i)),
                                  format_double(irf.cumulative(h, i))});
        }
    }
    write_delimited(path, table, ',', ref);
}

int cmd_irf(const CommonOptions& opt, std::ostream& out) {
    Pipeline p = load_pipeline(opt);
    GvarFit fit = fit_model(p, out);
    fs::path dir = prepare_out_dir(opt);
    std::string ref = p.manifest.reference();
    int horizon = opt.horizon >= 0 ? opt.horizon : p.config.horizon;
    auto agg_weights = aggregation_weights(p);

    std::vector<std::pair<std::string, ShockScenario>> scenarios;
    if (!opt.state.empty()) {
        scenarios.emplace_back("state_" + opt.state,
                               make_single_state_scenario(opt.state, p.scheme.labels,
                                                          opt.intensity));
    } else {
        for (ClimateRegion region : scenario_origins(opt, p.config)) {
            scenarios.emplace_back(std::string("region_") + to_string(region),
                                   make_region_scenario(region, p.config.region_map,
                                                        p.scheme.labels, opt.intensity));
        }
    }

    for (const auto& [name, scenario] : scenarios) {
        IrfResult irf = compute_irf(fit.system, scenario, horizon);
        write_irf_table(dir / ("irf_" + name + ".csv"), irf, p.scheme.labels, ref);

        RegionalIrf regional =
            aggregate_to_regions(irf.cumulative, p.config.region_map, p.scheme.labels, agg_weights);
        CsvTable table;
        table.header = {"horizon", "region", "cumulative"};
        for (Eigen::Index h = 0; h < regional.values.rows(); ++h) {
            for (std::size_t r = 0; r < regional.regions.size(); ++r) {
                table.rows.push_back({std::to_string(h), to_string(regional.regions[r]),
                                      format_double(regional.values(h, static_cast<Eigen::Index>(r)))});
            }
        }
        write_delimited(dir / ("irf_" + name + "_regions.csv"), table, ',', ref);
        out << name << ": impact response range [" << format_double(irf.difference.row(0).minCoeff())
            << ", " << format_double(irf.difference.row(0).maxCoeff()) << "]\n";
    }

    finish(p, opt, "irf");
    return 0;
}

int cmd_bootstrap(const CommonOptions& opt, std::ostream& out) {
    Pipeline p = load_pipeline(opt);
    GvarFit fit = fit_model(p, out);
    fs::path dir = prepare_out_dir(opt);
    std::string ref = p.manifest.reference();

    BootstrapConfig config = p.config.bootstrap;
    if (opt.horizon >= 0) config.horizon = opt.horizon;
    if (opt.replications >= 0) config.replications = opt.replications;
    if (opt.seed >= 0) config.seed = static_cast<std::uint64_t>(opt.seed);
    p.manifest.seed = config.seed;

    std::vector<std::pair<std::string, ShockScenario>> scenarios;
    if (!opt.state.empty()) {
        scenarios.emplace_back("state_" + opt.state,
                               make_single_state_scenario(opt.state, p.scheme.labels,
                                                          opt.intensity));
    } else {
        for (ClimateRegion region : scenario_origins(opt, p.config)) {
            scenarios.emplace_back(std::string("region_") + to_string(region),
                                   make_region_scenario(region, p.config.region_map,
                                                        p.scheme.labels, opt.intensity));
        }
    }

    std::vector<ShockScenario> bare;
    bare.reserve(scenarios.size());
    for (const auto& [name, scenario] : scenarios) bare.push_back(scenario);
    std::vector<BandedIrf> banded = bootstrap_irfs(fit, bare, config, &p.config.region_map);

    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        const std::string& name = scenarios[s].first;
        const BandedIrf& b = banded[s];

        CsvTable table;
        table.header = {"horizon", "unit", "point", "mean"};
        for (double q : b.percentiles) table.header.push_back("p" + format_double(q));
        for (Eigen::Index h = 0; h < b.mean_cumulative.rows(); ++h) {
            for (Eigen::Index i = 0; i < b.mean_cumulative.cols(); ++i) {
                std::vector<std::string> row = {std::to_string(h),
                                                p.scheme.labels[static_cast<std::size_t>(i)],
                                                format_double(b.point_cumulative(h, i)),
                                                format_double(b.mean_cumulative(h, i))};
                for (const auto& band : b.band_cumulative) row.push_back(format_double(band(h, i)));
                table.rows.push_back(std::move(row));
            }
        }
        write_delimited(dir / ("bootstrap_" + name + ".csv"), table, ',', ref);

        if (b.regional) {
            CsvTable regional;
            regional.header = {"horizon", "region", "point", "mean"};
            for (double q : b.percentiles) regional.header.push_back("p" + format_double(q));
            for (Eigen::Index h = 0; h < b.regional->mean.rows(); ++h) {
                for (std::size_t r = 0; r < b.regional->regions.size(); ++r) {
                    auto rc = static_cast<Eigen::Index>(r);
                    std::vector<std::string> row = {std::to_string(h),
                                                    to_string(b.regional->regions[r]),
                                                    format_double(b.regional->point(h, rc)),
                                                    format_double(b.regional->mean(h, rc))};
                    for (const auto& band : b.regional->band) {
                        row.push_back(format_double(band(h, rc)));
                    }
                    regional.rows.push_back(std::move(row));
                }
            }
            write_delimited(dir / ("bootstrap_" + name + "_regions.csv"), regional, ',', ref);
        }
        out << name << ": " << b.kept << " replications kept, " << b.discarded << " discarded\n";
    }

    finish(p, opt, "bootstrap");
    return 0;
}

int cmd_compare(const CommonOptions& opt, std::ostream& out) {
    Pipeline p = load_pipeline(opt);
    GvarFit fit = fit_model(p, out);
    fs::path dir = prepare_out_dir(opt);
    std::string ref = p.manifest.reference();

    SdpmEstimate sdpm = estimate_sdpm(p.y, p.scheme, p.s);
    if (p.config.compare_bias_iterations > 0) {
        BiasCorrectConfig bias;
        bias.sims_per_iteration = p.config.compare_bias_sims;
        bias.seed = p.config.bootstrap.seed;
        sdpm = bias_correct(sdpm, p.y, p.scheme, p.s, p.config.compare_bias_iterations, bias);
    }

    // Aggregate series: cross-state mean of the level index and the national
    // shock share.
    Eigen::VectorXd national_activity = p.activity.values.rowwise().mean();
    int offset = months_between(p.shocks.start, p.activity.start);
    if (offset < 0 || offset + p.activity.periods() > p.shocks.periods()) {
        fail(Errc::config_error, "shock panel does not cover the activity sample");
    }
    Eigen::VectorXd national_shock =
        p.shocks.national.segment(offset, p.activity.periods());
    ArdlEstimate ardl = estimate_ardl_us(national_activity, national_shock, 2);

    ThetaSummary theta = theta_summary(fit.estimates, p.scheme.labels);

    CsvTable sdpm_table;
    sdpm_table.header = {"parameter", "estimate", "std_error"};
    const char* names[4] = {"spatial_now", "own_lag", "spatial_lag", "shock"};
    Eigen::Vector4d coef = sdpm.coefficients();
    for (int i = 0; i < 4; ++i) {
        sdpm_table.rows.push_back({names[i], format_double(coef(i)),
                                   format_double(sdpm.std_errors[static_cast<std::size_t>(i)])});
    }
    write_delimited(dir / "compare_sdpm.csv", sdpm_table, ',', ref);

    CsvTable ardl_table;
    ardl_table.header = {"parameter", "estimate", "std_error"};
    for (Eigen::Index l = 0; l < ardl.own_lag.size(); ++l) {
        ardl_table.rows.push_back({"own_lag" + std::to_string(l + 1),
                                   format_double(ardl.own_lag(l)),
                                   format_double(ardl.own_lag_se(l))});
    }
    ardl_table.rows.push_back({"shock", format_double(ardl.shock_impact),
                               format_double(ardl.shock_se)});
    ardl_table.rows.push_back({"constant", format_double(ardl.constant),
                               format_double(ardl.constant_se)});
    write_delimited(dir / "compare_ardl.csv", ardl_table, ',', ref);

    CsvTable theta_table;
    theta_table.header = {"statistic", "value"};
    theta_table.rows.push_back({"mean", format_double(theta.mean)});
    theta_table.rows.push_back({"std_dev", format_double(theta.std_dev)});
    theta_table.rows.push_back({"min", format_double(theta.min)});
    theta_table.rows.push_back({"max", format_double(theta.max)});
    theta_table.rows.push_back({"argmin_state", theta.argmin_state});
    theta_table.rows.push_back({"argmax_state", theta.argmax_state});
    write_delimited(dir / "compare_theta.csv", theta_table, ',', ref);

    // Three-panel plain-text table.
    std::ofstream txt(dir / "comparison.txt");
    txt << "(a) Spatial dynamic panel model"
        << (sdpm.bias_corrected ? " (bias-corrected)" : "") << "\n";
    txt << "  parameter      estimate    std. error\n";
    for (int i = 0; i < 4; ++i) {
        char line[96];
        std::snprintf(line, sizeof(line), "  %-12s %10.4f    %10.4f\n", names[i], coef(i),
                      sdpm.std_errors[static_cast<std::size_t>(i)]);
        txt << line;
    }
    txt << "\n(b) Aggregate ARDL\n  parameter      estimate    std. error\n";
    for (Eigen::Index l = 0; l < ardl.own_lag.size(); ++l) {
        char line[96];
        std::snprintf(line, sizeof(line), "  own_lag%-5lld %10.4f    %10.4f\n",
                      static_cast<long long>(l + 1), ardl.own_lag(l), ardl.own_lag_se(l));
        txt << line;
    }
    {
        char line[96];
        std::snprintf(line, sizeof(line), "  %-12s %10.4f    %10.4f\n", "shock",
                      ardl.shock_impact, ardl.shock_se);
        txt << line;
        std::snprintf(line, sizeof(line), "  %-12s %10.4f    %10.4f\n", "constant", ardl.constant,
                      ardl.constant_se);
        txt << line;
    }
    txt << "\n(c) Heterogeneous shock coefficients\n";
    {
        char line[128];
        std::snprintf(line, sizeof(line),
                      "  mean %.4f  std.dev %.4f  min %.4f (%s)  max %.4f (%s)\n", theta.mean,
                      theta.std_dev, theta.min, theta.argmin_state.c_str(), theta.max,
                      theta.argmax_state.c_str());
        txt << line;
    }

    finish(p, opt, "compare");
    out << "spatial panel shock coefficient " << format_double(sdpm.shock_impact)
        << ", aggregate shock coefficient " << format_double(ardl.shock_impact)
        << ", mean state coefficient " << format_double(theta.mean) << "\n";
    return 0;
}

int cmd_second_round(const CommonOptions& opt, std::ostream& out) {
    Pipeline p = load_pipeline(opt);
    GvarFit fit = fit_model(p, out);
    fs::path dir = prepare_out_dir(opt);
    std::string ref = p.manifest.reference();

    int horizon = opt.horizon >= 0 ? opt.horizon : p.config.headline_horizon;

    CsvTable table;
    table.header = {"state", "full", "muted", "second_round"};
    int replications = opt.replications >= 0 ? opt.replications : 0;
    SecondRoundBands bands;
    if (replications > 0) {
        BootstrapConfig config = p.config.bootstrap;
        config.replications = replications;
        config.horizon = std::max(config.horizon, horizon);
        if (opt.seed >= 0) config.seed = static_cast<std::uint64_t>(opt.seed);
        bands = bootstrap_second_round(fit, horizon, config);
        table.header = {"state", "full", "muted", "second_round", "full_mean", "muted_mean"};
        for (double q : config.percentiles) {
            table.header.push_back("full_p" + format_double(q));
            table.header.push_back("muted_p" + format_double(q));
        }
    }

    for (Eigen::Index i = 0; i < fit.system.size(); ++i) {
        ShockScenario scenario;
        scenario.intensity = Eigen::VectorXd::Zero(fit.system.size());
        scenario.intensity(i) = opt.intensity;
        SecondRoundResult sr = second_round(fit.system, fit.estimates, scenario, horizon);
        std::vector<std::string> row = {p.scheme.labels[static_cast<std::size_t>(i)],
                                        format_double(sr.full_cumulative(horizon)),
                                        format_double(sr.muted_cumulative(horizon)),
                                        format_double(sr.second_round_at(horizon))};
        if (replications > 0) {
            row.push_back(format_double(bands.full_mean(i)));
            row.push_back(format_double(bands.muted_mean(i)));
            for (Eigen::Index q = 0; q < bands.full_band.cols(); ++q) {
                row.push_back(format_double(bands.full_band(i, q)));
                row.push_back(format_double(bands.muted_band(i, q)));
            }
        }
        table.rows.push_back(std::move(row));
    }
    write_delimited(dir / "second_round.csv", table, ',', ref);

    finish(p, opt, "second-round");
    out << "second-round table for " << fit.system.size() << " states at horizon " << horizon
        << "\n";
    return 0;
}

struct SimulateOptions {
    int units = 5;
    int periods = 400;
    int lags = 1;
    long long seed = 1;
    std::string out_dir = "out";
};

int cmd_simulate(const SimulateOptions& opt, std::ostream& out) {
    DgpSpec spec;
    spec.units = opt.units;
    spec.periods = opt.periods;
    spec.lags = opt.lags;
    spec.seed = static_cast<std::uint64_t>(opt.seed);

    SimulatedGvar sim = simulate_gvar(spec);
    fs::path dir = opt.out_dir;
    fs::create_directories(dir);

    export_simulated_dataset(sim, dir / "activity.csv", dir / "shocks.csv");
    write_weight_matrix(dir / "weights.csv", sim.scheme);

    write_matrix(dir / "truth_lambda.csv", sim.truth.lambda, sim.labels, "");

    // A ready-to-run config pointing at the exported files.
    nlohmann::json config;
    config["inputs"] = {{"activity", "activity.csv"},
                        {"shock_panel", "shocks.csv"},
                        {"weight_matrix", "weights.csv"}};
    config["weights"] = {{"source", "file"}};
    config["activity_layout"] = "wide";
    std::vector<std::string> universe = sim.labels;
    std::sort(universe.begin(), universe.end());
    config["state_universe"] = universe;
    nlohmann::json counties;
    for (const auto& m : sim.meta) counties[m.state] = m.counties;
    config["state_counties"] = counties;
    nlohmann::json region_map;  // synthetic units all in one region for scenario runs
    for (const auto& label : sim.labels) region_map[label] = "NE";
    config["region_map"] = region_map;
    config["validate_region_map"] = false;
    config["window"] = {{"start", to_string(add_months(sim.start, -1))},
                        {"end", to_string(add_months(sim.start, spec.periods - 1))}};
    config["lags"] = {{"select_by_bic", false}, {"own", spec.lags}, {"foreign", spec.lags}};
    config["bootstrap"] = {{"replications", 200}, {"seed", 42}};
    std::ofstream(dir / "config.json") << config.dump(2) << "\n";

    out << "simulated " << spec.units << " units x " << spec.periods
        << " periods (seed " << opt.seed << ") into " << dir.string() << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"State-level shock-spillover modelling toolkit"};
    app.require_subcommand(1);

    CommonOptions opt;
    SimulateOptions sim_opt;

    auto add_common = [&](CLI::App* cmd, bool scenario_flags = false) {
        cmd->add_option("--config", opt.config_path, "JSON run configuration");
        cmd->add_option("--out", opt.out_dir, "output directory");
        cmd->add_flag("--adjacency", opt.adjacency, "use border-adjacency weights");
        cmd->add_option("--event-group", opt.event_group,
                        "restrict the shock filter to one event group");
        if (scenario_flags) {
            cmd->add_option("--region", opt.region, "origin climate region");
            cmd->add_flag("--all-regions", opt.all_regions, "one scenario per region");
            cmd->add_option("--state", opt.state, "single-state scenario");
            cmd->add_option("--intensity", opt.intensity, "shock intensity in [0,1]");
            cmd->add_option("--horizon", opt.horizon, "response horizon in months");
        }
    };

    CLI::App* shocks = app.add_subcommand("shocks", "build the state and national shock series");
    add_common(shocks);
    CLI::App* summarize =
        app.add_subcommand("summarize", "declaration counts by group, season and state");
    summarize->add_option("--config", opt.config_path, "JSON run configuration");
    summarize->add_option("--out", opt.out_dir, "output directory");
    CLI::App* estimate = app.add_subcommand("estimate", "per-state equations and diagnostics");
    add_common(estimate);
    CLI::App* gvar_cmd = app.add_subcommand("gvar", "stacked system and reduced form");
    add_common(gvar_cmd);
    CLI::App* irf_cmd = app.add_subcommand("irf", "scenario impulse responses");
    add_common(irf_cmd, true);
    CLI::App* bootstrap_cmd =
        app.add_subcommand("bootstrap", "impulse responses with bootstrap bands");
    add_common(bootstrap_cmd, true);
    bootstrap_cmd->add_option("--replications", opt.replications, "bootstrap replications");
    bootstrap_cmd->add_option("--seed", opt.seed, "bootstrap seed");
    CLI::App* compare_cmd =
        app.add_subcommand("compare", "spatial panel, aggregate ARDL and coefficient spread");
    add_common(compare_cmd);
    CLI::App* second_cmd =
        app.add_subcommand("second-round", "own-state responses with and without feedback");
    add_common(second_cmd, true);
    second_cmd->add_option("--replications", opt.replications,
                           "bootstrap replications (0 = point only)");
    second_cmd->add_option("--seed", opt.seed, "bootstrap seed");
    CLI::App* simulate_cmd = app.add_subcommand("simulate", "write a synthetic dataset");
    simulate_cmd->add_option("--units", sim_opt.units, "number of units");
    simulate_cmd->add_option("--periods", sim_opt.periods, "number of months");
    simulate_cmd->add_option("--lags", sim_opt.lags, "true lag order");
    simulate_cmd->add_option("--seed", sim_opt.seed, "generator seed");
    simulate_cmd->add_option("--out", sim_opt.out_dir, "output directory");

    std::vector<std::string> argv_storage = args;
    std::vector<const char*> argv;
    argv.push_back("gvarkit");
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream help;
        if (e.get_exit_code() != 0) {
            help << app.help();
            err << help.str();
        } else {
            out << app.help();
        }
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (shocks->parsed()) return cmd_shocks(opt, out);
        if (summarize->parsed()) return cmd_summarize(opt, out);
        if (estimate->parsed()) return cmd_estimate(opt, out);
        if (gvar_cmd->parsed()) return cmd_gvar(opt, out);
        if (irf_cmd->parsed()) return cmd_irf(opt, out);
        if (bootstrap_cmd->parsed()) return cmd_bootstrap(opt, out);
        if (compare_cmd->parsed()) return cmd_compare(opt, out);
        if (second_cmd->parsed()) return cmd_second_round(opt, out);
        if (simulate_cmd->parsed()) return cmd_simulate(sim_opt, out);
    } catch (const Error& e) {
        nlohmann::json record;
        record["error"] = errc_name(e.code());
        record["message"] = e.what();
        err << record.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        nlohmann::json record;
        record["error"] = "Internal";
        record["message"] = e.what();
        err << record.dump() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace gvarkit

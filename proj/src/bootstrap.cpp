#include "gvarkit/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "gvarkit/error.hpp"
#include "gvarkit/synth.hpp"

namespace gvarkit {

Eigen::MatrixXd resample_residuals(const Eigen::MatrixXd& residuals, Rng& rng) {
    if (residuals.rows() == 0) fail(Errc::empty_residuals, "no residual rows to resample");
    Eigen::MatrixXd out(residuals.rows(), residuals.cols());
    for (Eigen::Index t = 0; t < residuals.rows(); ++t) {
        auto draw = static_cast<Eigen::Index>(
            rng.bounded(static_cast<std::uint64_t>(residuals.rows())));
        out.row(t) = residuals.row(draw);
    }
    return out;
}

Eigen::MatrixXd resample_residuals(const Eigen::MatrixXd& residuals, std::uint64_t seed) {
    Rng rng(seed);
    return resample_residuals(residuals, rng);
}

double percentile(std::vector<double> values, double p) {
    if (values.empty()) fail(Errc::empty_residuals, "percentile of an empty sample");
    std::sort(values.begin(), values.end());
    double pos = (p / 100.0) * static_cast<double>(values.size() - 1);
    auto idx = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(idx);
    if (idx + 1 < values.size()) {
        return values[idx] * (1.0 - frac) + values[idx + 1] * frac;
    }
    return values[idx];
}

namespace {

void check_config(const BootstrapConfig& config) {
    if (config.replications < 1) fail(Errc::config_error, "need at least one replication");
    if (config.horizon < 0) fail(Errc::config_error, "horizon must be non-negative");
    for (std::size_t i = 0; i < config.percentiles.size(); ++i) {
        double p = config.percentiles[i];
        if (p <= 0.0 || p >= 100.0) fail(Errc::config_error, "percentiles must lie in (0,100)");
        if (i > 0 && p <= config.percentiles[i - 1]) {
            fail(Errc::config_error, "percentiles must be strictly increasing");
        }
    }
}

}  // namespace

BootstrapPayloads bootstrap_payloads(const GvarFit& fit, const BootstrapConfig& config,
                                     Eigen::Index payload_size,
                                     const ReplicationEvaluator& evaluate) {
    check_config(config);
    if (fit.residuals.rows() == 0) fail(Errc::empty_residuals, "fit carries no residuals");

    if (!config.allow_unstable && !stability(fit.system).stable) {
        fail(Errc::unstable_point_system,
             "point estimate is unstable; set allow_unstable to proceed");
    }

    Eigen::Index n = fit.system.size();
    int p = fit.system.lag_order();
    Eigen::Index t_total = fit.y.rows();

    BootstrapPayloads result;
    result.rows = Eigen::MatrixXd::Zero(config.replications, payload_size);
    result.kept.assign(static_cast<std::size_t>(config.replications), 0);

    auto run_slot = [&](int r) {
        Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(r)));
        Eigen::MatrixXd u = resample_residuals(fit.residuals, rng);

        // Map structural residual rows through G and regenerate the panel,
        // holding the first p observations at their sample values.
        Eigen::MatrixXd innovations = Eigen::MatrixXd::Zero(t_total, n);
        innovations.bottomRows(t_total - p) =
            fit.system.g_lu.solve(u.transpose()).transpose();
        Eigen::MatrixXd regenerated =
            simulate_reduced_form_path(fit.system, fit.y.topRows(p), fit.s, innovations);

        // Re-estimate with the point-estimate lag structure.
        Eigen::MatrixXd foreign = foreign_averages(regenerated, fit.scheme.w);
        std::vector<ArxEstimate> estimates;
        estimates.reserve(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) {
            estimates.push_back(estimate_arx(regenerated.col(i), foreign.col(i), fit.s.col(i),
                                             fit.specs[static_cast<std::size_t>(i)], p));
        }
        StackedGvar stacked = assemble(estimates, fit.scheme);
        while (stacked.lag_order() < p) {
            stacked.h.push_back(Eigen::MatrixXd::Zero(n, n));
        }
        GvarSystem system = solve_reduced_form(stacked);
        if (!config.allow_unstable && stability(system).spectral_radius >= 1.0) {
            return;  // discarded
        }
        result.rows.row(r) = evaluate(system, estimates).transpose();
        result.kept[static_cast<std::size_t>(r)] = 1;
    };

    auto guarded_slot = [&](int r) {
        try {
            run_slot(r);
        } catch (const Error&) {
            // A replication that fails to re-estimate or solve counts as a
            // discard, like an explosive one.
        }
    };

    int threads = config.threads > 0 ? config.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, config.replications);
    if (threads == 1) {
        for (int r = 0; r < config.replications; ++r) guarded_slot(r);
    } else {
        // Pre-seeded slots make the outcome independent of the thread layout.
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (int r = w; r < config.replications; r += threads) guarded_slot(r);
            });
        }
        for (auto& t : pool) t.join();
    }

    for (char k : result.kept) {
        if (!k) ++result.discarded;
    }
    if (result.discarded >
        static_cast<int>(config.max_discard_fraction * config.replications)) {
        fail(Errc::too_many_unstable,
             std::to_string(result.discarded) + " of " + std::to_string(config.replications) +
                 " replications were explosive");
    }
    return result;
}

namespace {

struct CellBands {
    Eigen::MatrixXd mean;
    std::vector<Eigen::MatrixXd> bands;
};

/// Mean and percentiles over kept replications, cell by cell.
CellBands reduce_cells(const Eigen::MatrixXd& payload_rows, const std::vector<char>& kept,
                       Eigen::Index rows, Eigen::Index cols, Eigen::Index offset,
                       const std::vector<double>& percentiles) {
    CellBands out;
    out.mean = Eigen::MatrixXd::Zero(rows, cols);
    out.bands.assign(percentiles.size(), Eigen::MatrixXd::Zero(rows, cols));
    std::vector<double> cell;
    for (Eigen::Index c = 0; c < rows * cols; ++c) {
        cell.clear();
        for (Eigen::Index r = 0; r < payload_rows.rows(); ++r) {
            if (kept[static_cast<std::size_t>(r)]) cell.push_back(payload_rows(r, offset + c));
        }
        Eigen::Index row = c % rows;
        Eigen::Index col = c / rows;
        double total = 0.0;
        for (double v : cell) total += v;
        out.mean(row, col) = total / static_cast<double>(cell.size());
        for (std::size_t q = 0; q < percentiles.size(); ++q) {
            out.bands[q](row, col) = percentile(cell, percentiles[q]);
        }
    }
    return out;
}

Eigen::VectorXd flatten_column_major(const Eigen::MatrixXd& m) {
    return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

}  // namespace

std::vector<BandedIrf> bootstrap_irfs(const GvarFit& fit,
                                      const std::vector<ShockScenario>& scenarios,
                                      const BootstrapConfig& config,
                                      const RegionMap* region_map) {
    if (scenarios.empty()) fail(Errc::config_error, "no scenarios supplied");
    Eigen::Index n = fit.system.size();
    Eigen::Index h1 = config.horizon + 1;
    Eigen::Index per_scenario = 2 * h1 * n;  // difference block then cumulative block

    ReplicationEvaluator evaluate = [&](const GvarSystem& system,
                                        const std::vector<ArxEstimate>&) {
        Eigen::VectorXd payload(per_scenario * static_cast<Eigen::Index>(scenarios.size()));
        for (std::size_t s = 0; s < scenarios.size(); ++s) {
            IrfResult irf = compute_irf(system, scenarios[s], config.horizon);
            payload.segment(static_cast<Eigen::Index>(s) * per_scenario, h1 * n) =
                flatten_column_major(irf.difference);
            payload.segment(static_cast<Eigen::Index>(s) * per_scenario + h1 * n, h1 * n) =
                flatten_column_major(irf.cumulative);
        }
        return payload;
    };

    BootstrapPayloads payloads = bootstrap_payloads(
        fit, config, per_scenario * static_cast<Eigen::Index>(scenarios.size()), evaluate);

    std::vector<BandedIrf> out;
    out.reserve(scenarios.size());
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        Eigen::Index base = static_cast<Eigen::Index>(s) * per_scenario;
        BandedIrf banded;
        banded.percentiles = config.percentiles;
        banded.kept = config.replications - payloads.discarded;
        banded.discarded = payloads.discarded;

        IrfResult point = compute_irf(fit.system, scenarios[s], config.horizon);
        banded.point_cumulative = point.cumulative;

        CellBands diff = reduce_cells(payloads.rows, payloads.kept, h1, n, base, {});
        banded.mean_difference = diff.mean;
        CellBands cum =
            reduce_cells(payloads.rows, payloads.kept, h1, n, base + h1 * n, config.percentiles);
        banded.mean_cumulative = cum.mean;
        banded.band_cumulative = std::move(cum.bands);

        if (region_map) {
            // Aggregate each replication's cumulative responses, then band.
            RegionalIrf point_regional =
                aggregate_to_regions(point.cumulative, *region_map, fit.scheme.labels);
            Eigen::Index regions = static_cast<Eigen::Index>(point_regional.regions.size());
            Eigen::MatrixXd regional_rows = Eigen::MatrixXd::Zero(config.replications, h1 * regions);
            for (Eigen::Index r = 0; r < payloads.rows.rows(); ++r) {
                if (!payloads.kept[static_cast<std::size_t>(r)]) continue;
                Eigen::VectorXd segment = payloads.rows.row(r).segment(base + h1 * n, h1 * n);
                Eigen::MatrixXd cum_r = Eigen::Map<const Eigen::MatrixXd>(segment.data(), h1, n);
                RegionalIrf agg = aggregate_to_regions(cum_r, *region_map, fit.scheme.labels);
                regional_rows.row(r) = flatten_column_major(agg.values).transpose();
            }
            CellBands reg = reduce_cells(regional_rows, payloads.kept, h1, regions, 0,
                                         config.percentiles);
            BandedIrf::RegionalBands regional;
            regional.regions = point_regional.regions;
            regional.mean = reg.mean;
            regional.band = std::move(reg.bands);
            regional.point = point_regional.values;
            banded.regional = std::move(regional);
        }
        out.push_back(std::move(banded));
    }
    return out;
}

BandedIrf bootstrap_irf(const GvarFit& fit, const ShockScenario& scenario,
                        const BootstrapConfig& config, const RegionMap* region_map) {
    return bootstrap_irfs(fit, {scenario}, config, region_map).front();
}

SecondRoundBands bootstrap_second_round(const GvarFit& fit, int horizon,
                                        const BootstrapConfig& config) {
    Eigen::Index n = fit.system.size();
    if (horizon < 0 || horizon > config.horizon) {
        fail(Errc::config_error, "headline horizon outside the bootstrap horizon");
    }

    auto state_pairs = [&](const GvarSystem& system, const std::vector<ArxEstimate>& estimates) {
        Eigen::VectorXd payload(2 * n);
        for (Eigen::Index i = 0; i < n; ++i) {
            ShockScenario scenario;
            scenario.intensity = Eigen::VectorXd::Zero(n);
            scenario.intensity(i) = 1.0;
            SecondRoundResult sr = second_round(system, estimates, scenario, horizon);
            payload(i) = sr.full_cumulative(horizon);
            payload(n + i) = sr.muted_cumulative(horizon);
        }
        return payload;
    };

    BootstrapPayloads payloads = bootstrap_payloads(fit, config, 2 * n, state_pairs);

    SecondRoundBands out;
    out.states = fit.scheme.labels;
    out.percentiles = config.percentiles;
    out.horizon = horizon;
    out.kept = config.replications - payloads.discarded;
    out.discarded = payloads.discarded;

    Eigen::VectorXd point = state_pairs(fit.system, fit.estimates);
    out.full_point = point.head(n);
    out.muted_point = point.tail(n);

    CellBands full = reduce_cells(payloads.rows, payloads.kept, n, 1, 0, config.percentiles);
    CellBands muted = reduce_cells(payloads.rows, payloads.kept, n, 1, n, config.percentiles);
    out.full_mean = full.mean.col(0);
    out.muted_mean = muted.mean.col(0);
    out.full_band.resize(n, static_cast<Eigen::Index>(config.percentiles.size()));
    out.muted_band.resize(n, static_cast<Eigen::Index>(config.percentiles.size()));
    for (std::size_t q = 0; q < config.percentiles.size(); ++q) {
        out.full_band.col(static_cast<Eigen::Index>(q)) = full.bands[q].col(0);
        out.muted_band.col(static_cast<Eigen::Index>(q)) = muted.bands[q].col(0);
    }
    return out;
}

}  // namespace gvarkit

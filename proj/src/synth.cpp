#include "gvarkit/synth.hpp"

#include <algorithm>
#include <cmath>

#include "gvarkit/error.hpp"

namespace gvarkit {

WeightScheme random_weight_scheme(int units, int neighbours, Rng& rng) {
    if (units < 2) fail(Errc::config_error, "need at least two units");
    Eigen::Index n = units;

    WeightScheme scheme;
    scheme.labels.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < units; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "U%02d", i + 1);
        scheme.labels.emplace_back(buf);
    }

    // A random spanning tree guarantees connectivity; extra random links
    // bring each unit up to the requested neighbour count.
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) {
        Eigen::Index j = static_cast<Eigen::Index>(rng.bounded(static_cast<std::uint64_t>(i)));
        adj(i, j) = adj(j, i) = 1.0;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        int current = static_cast<int>((adj.row(i).array() != 0.0).count());
        for (int extra = current; extra < std::min(neighbours, units - 1); ++extra) {
            Eigen::Index j = static_cast<Eigen::Index>(rng.bounded(static_cast<std::uint64_t>(n)));
            if (j != i) adj(i, j) = adj(j, i) = 1.0;
        }
    }

    scheme.w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double total = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j || adj(i, j) == 0.0) continue;
            double weight = 0.2 + rng.uniform01();
            scheme.w(i, j) = weight;
            total += weight;
        }
        scheme.w.row(i) /= total;
    }
    return scheme;
}

namespace {

Eigen::VectorXd draw_vector(std::optional<Eigen::VectorXd> explicit_values, CoefficientRange range,
                            Eigen::Index n, Rng& rng) {
    if (explicit_values) {
        if (explicit_values->size() != n) fail(Errc::dimension_mismatch, "coefficient length");
        return *explicit_values;
    }
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.uniform(range.lo, range.hi);
    return v;
}

Eigen::MatrixXd draw_matrix(std::optional<Eigen::MatrixXd> explicit_values, CoefficientRange range,
                            Eigen::Index n, int lags, Rng& rng, double lag_decay) {
    if (explicit_values) {
        if (explicit_values->rows() != n || explicit_values->cols() != lags) {
            fail(Errc::dimension_mismatch, "coefficient matrix shape");
        }
        return *explicit_values;
    }
    Eigen::MatrixXd m(n, lags);
    for (int l = 0; l < lags; ++l) {
        double scale = std::pow(lag_decay, l);
        for (Eigen::Index i = 0; i < n; ++i) {
            m(i, l) = scale * rng.uniform(range.lo, range.hi);
        }
    }
    return m;
}

/// Integer county hits from a Bernoulli event and a Beta-distributed share.
void draw_shock_panel(ShockPanel& panel, const DgpSpec& spec, Rng& rng) {
    for (Eigen::Index t = 0; t < panel.periods(); ++t) {
        for (Eigen::Index i = 0; i < panel.size(); ++i) {
            if (rng.uniform01() >= spec.hit_probability) continue;
            double share = rng.beta(spec.share_alpha, spec.share_beta);
            int hits = std::max(1, static_cast<int>(std::lround(share * spec.counties_per_unit)));
            hits = std::min(hits, spec.counties_per_unit);
            panel.hit(t, i) = hits;
            panel.emergency(t, i) = 1;
            panel.s(t, i) = static_cast<double>(hits) / spec.counties_per_unit;
        }
    }
}

}  // namespace

SimulatedGvar simulate_gvar(const DgpSpec& spec) {
    if (spec.units < 1 || spec.periods < 10 || spec.lags < 1) {
        fail(Errc::config_error, "invalid DGP dimensions");
    }
    Rng rng(spec.seed);

    SimulatedGvar sim;
    WeightScheme scheme;
    if (spec.scheme) {
        scheme = *spec.scheme;
    } else if (spec.units == 1) {
        scheme.labels = {"U01"};
        scheme.w = Eigen::MatrixXd::Zero(1, 1);
    } else {
        scheme = random_weight_scheme(spec.units, spec.neighbours, rng);
    }
    Eigen::Index n = scheme.size();
    sim.labels = scheme.labels;
    sim.scheme = scheme;

    // Draw coefficients until the reduced form is comfortably stable.
    StackedGvar stacked;
    bool accepted = false;
    for (int attempt = 0; attempt < spec.max_redraws && !accepted; ++attempt) {
        Eigen::VectorXd intercept = draw_vector(spec.intercept, spec.intercept_range, n, rng);
        Eigen::MatrixXd own = draw_matrix(spec.own_lag, spec.own_lag_range, n, spec.lags, rng, 0.5);
        Eigen::VectorXd foreign_now =
            draw_vector(spec.foreign_now, spec.foreign_now_range, n, rng);
        Eigen::MatrixXd foreign_lag =
            draw_matrix(spec.foreign_lag, spec.foreign_lag_range, n, spec.lags, rng, 0.5);
        Eigen::VectorXd impact = draw_vector(spec.shock_impact, spec.shock_impact_range, n, rng);
        Eigen::VectorXd variance =
            draw_vector(spec.noise_variance, spec.noise_variance_range, n, rng);

        std::vector<ArxEstimate> units;
        units.reserve(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) {
            ArxEstimate est;
            est.spec = ArxSpec{spec.lags, spec.lags, true, true, true};
            est.intercept = intercept(i);
            est.own_lag = own.row(i).transpose();
            est.foreign_now = n > 1 ? foreign_now(i) : 0.0;
            est.foreign_lag = Eigen::VectorXd::Zero(spec.lags);
            if (n > 1) est.foreign_lag = foreign_lag.row(i).transpose();
            est.shock = impact(i);
            est.sigma2 = variance(i);
            units.push_back(std::move(est));
        }
        stacked = assemble(units, scheme);
        GvarSystem candidate = solve_reduced_form(stacked);
        Stability stab = stability(candidate);
        if (stab.spectral_radius < spec.stability_bound) {
            sim.truth = std::move(candidate);
            sim.true_units = std::move(units);
            accepted = true;
        }
        if (spec.own_lag && spec.foreign_now && spec.foreign_lag) break;  // nothing to redraw
    }
    if (!accepted) {
        fail(Errc::unstable_spec, "could not draw a stable system within the redraw cap");
    }

    // Shock panel over burn-in + sample; burned-in months carry no shocks.
    int total = spec.burn_in + spec.periods;
    ShockPanel shocks;
    shocks.start = add_months(sim.start, -spec.burn_in);
    shocks.states = scheme.labels;
    shocks.s = Eigen::MatrixXd::Zero(total, n);
    shocks.hit = Eigen::MatrixXi::Zero(total, n);
    shocks.emergency = Eigen::MatrixXi::Zero(total, n);
    ShockPanel sample_shocks;
    sample_shocks.start = sim.start;
    sample_shocks.states = scheme.labels;
    sample_shocks.s = Eigen::MatrixXd::Zero(spec.periods, n);
    sample_shocks.hit = Eigen::MatrixXi::Zero(spec.periods, n);
    sample_shocks.emergency = Eigen::MatrixXi::Zero(spec.periods, n);
    draw_shock_panel(sample_shocks, spec, rng);
    shocks.s.bottomRows(spec.periods) = sample_shocks.s;
    shocks.hit.bottomRows(spec.periods) = sample_shocks.hit;
    shocks.emergency.bottomRows(spec.periods) = sample_shocks.emergency;

    for (const auto& label : scheme.labels) sim.meta.push_back({label, spec.counties_per_unit});
    sample_shocks.national = build_national_shock(sample_shocks, sim.meta);
    sim.shocks = std::move(sample_shocks);

    // Structural errors mapped through the contemporaneous block.
    Eigen::MatrixXd innovations(total, n);
    Eigen::VectorXd sd = stacked.sigma2.array().sqrt();
    for (int t = 0; t < total; ++t) {
        Eigen::VectorXd u(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            double z = spec.heavy_tails ? rng.student_t_unit_variance(spec.t_dof) : rng.normal();
            u(i) = sd(i) * z;
        }
        innovations.row(t) = sim.truth.g_lu.solve(u).transpose();
    }

    Eigen::MatrixXd initial = Eigen::MatrixXd::Zero(spec.lags, n);
    Eigen::MatrixXd path = simulate_reduced_form_path(sim.truth, initial, shocks.s, innovations);
    sim.y = path.bottomRows(spec.periods);
    return sim;
}

Eigen::MatrixXd simulate_reduced_form_path(const GvarSystem& system, const Eigen::MatrixXd& initial,
                                           const Eigen::MatrixXd& shocks,
                                           const Eigen::MatrixXd& innovations) {
    Eigen::Index n = system.size();
    int p = system.lag_order();
    if (initial.rows() < p || initial.cols() != n) {
        fail(Errc::dimension_mismatch, "initial block must supply p rows");
    }
    Eigen::Index total = shocks.rows();
    if (innovations.rows() != total || shocks.cols() != n || innovations.cols() != n) {
        fail(Errc::dimension_mismatch, "shock/innovation panels must match the system");
    }
    if (total < p) fail(Errc::sample_too_short, "path shorter than the lag order");

    Eigen::MatrixXd path(total, n);
    path.topRows(p) = initial.topRows(p);
    for (Eigen::Index t = p; t < total; ++t) {
        Eigen::VectorXd value = system.c;
        for (int l = 1; l <= p; ++l) {
            value += system.f[static_cast<std::size_t>(l - 1)] * path.row(t - l).transpose();
        }
        value += system.lambda * shocks.row(t).transpose();
        value += innovations.row(t).transpose();
        path.row(t) = value.transpose();
    }
    return path;
}

SimulatedSdpm simulate_sdpm(const SdpmDgpSpec& spec) {
    if (spec.units < 2 || spec.periods < 10) fail(Errc::config_error, "invalid DGP dimensions");
    Rng rng(spec.seed);

    SimulatedSdpm sim;
    sim.scheme = spec.scheme ? *spec.scheme : random_weight_scheme(spec.units, spec.neighbours, rng);
    Eigen::Index n = sim.scheme.size();

    sim.fixed_effects.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        sim.fixed_effects(i) = rng.uniform(spec.fixed_effect_range.lo, spec.fixed_effect_range.hi);
    }

    int total = spec.burn_in + spec.periods;
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(total, n);
    for (int t = spec.burn_in; t < total; ++t) {
        for (Eigen::Index i = 0; i < n; ++i) {
            if (rng.uniform01() < spec.hit_probability) {
                s(t, i) = rng.beta(spec.share_alpha, spec.share_beta);
            }
        }
    }

    // (I - pW) y_t = gamma y_{t-1} + rho W y_{t-1} + beta s_t + c + e_t
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n) - spec.spatial * sim.scheme.w;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(lhs);
    double sd = std::sqrt(spec.noise_variance);

    Eigen::MatrixXd path = Eigen::MatrixXd::Zero(total, n);
    for (int t = 1; t < total; ++t) {
        Eigen::VectorXd prev = path.row(t - 1).transpose();
        Eigen::VectorXd rhs = spec.own_lag * prev + spec.spatial_lag * (sim.scheme.w * prev) +
                              spec.shock_impact * s.row(t).transpose() + sim.fixed_effects;
        for (Eigen::Index i = 0; i < n; ++i) rhs(i) += sd * rng.normal();
        path.row(t) = lu.solve(rhs).transpose();
    }
    sim.y = path.bottomRows(spec.periods);
    sim.s = s.bottomRows(spec.periods);
    return sim;
}

void export_simulated_dataset(const SimulatedGvar& sim, const std::filesystem::path& activity_path,
                              const std::filesystem::path& shock_path) {
    // Levels are running sums of the differences with a zero starting row;
    // written values round-trip exactly through the shortest-double format.
    ActivityPanel panel;
    panel.start = add_months(sim.start, -1);
    panel.states = sim.labels;
    panel.values.resize(sim.y.rows() + 1, sim.y.cols());
    panel.values.row(0).setZero();
    for (Eigen::Index t = 0; t < sim.y.rows(); ++t) {
        panel.values.row(t + 1) = panel.values.row(t) + sim.y.row(t);
    }
    write_activity_panel(activity_path, panel, PanelLayout::wide);
    write_shock_panel(shock_path, sim.shocks);
}

}  // namespace gvarkit

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gvarkit/gvar.hpp"
#include "gvarkit/ingest.hpp"
#include "gvarkit/rng.hpp"
#include "gvarkit/shocks.hpp"
#include "gvarkit/weights.hpp"

namespace gvarkit {

struct CoefficientRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Ground-truth data-generating process for the stacked model. Coefficients
/// are either supplied explicitly or drawn from the ranges; draws are
/// rejected until the implied reduced form is stable.
struct DgpSpec {
    int units = 5;
    int periods = 500;
    int lags = 1;
    std::uint64_t seed = 1;

    // Explicit values take precedence over the ranges below.
    std::optional<Eigen::VectorXd> intercept;      // length N
    std::optional<Eigen::MatrixXd> own_lag;        // N x lags
    std::optional<Eigen::VectorXd> foreign_now;    // length N
    std::optional<Eigen::MatrixXd> foreign_lag;    // N x lags
    std::optional<Eigen::VectorXd> shock_impact;   // length N
    std::optional<Eigen::VectorXd> noise_variance; // length N

    CoefficientRange intercept_range{0.0, 0.0};
    CoefficientRange own_lag_range{0.2, 0.5};
    CoefficientRange foreign_now_range{0.1, 0.4};
    CoefficientRange foreign_lag_range{-0.1, 0.1};
    CoefficientRange shock_impact_range{-0.4, -0.1};
    CoefficientRange noise_variance_range{0.5, 1.5};

    std::optional<WeightScheme> scheme;  // absent -> random connected scheme
    int neighbours = 3;                  // sparsity of the random scheme

    // Shock process: each unit-month is hit with `hit_probability`; the county
    // share of a hit is Beta(share_alpha, share_beta) rounded onto the grid.
    double hit_probability = 0.05;
    double share_alpha = 2.0;
    double share_beta = 5.0;
    int counties_per_unit = 20;

    double stability_bound = 0.98;
    int max_redraws = 200;
    int burn_in = 200;

    bool heavy_tails = false;  // scaled-t errors instead of Gaussian
    double t_dof = 5.0;
};

struct SimulatedGvar {
    Eigen::MatrixXd y;        // T x N, difference scale
    ShockPanel shocks;        // matching T x N panel
    GvarSystem truth;
    WeightScheme scheme;      // the weights the truth system was built on
    std::vector<ArxEstimate> true_units;  // per-unit coefficients behind the truth
    std::vector<StateMeta> meta;
    std::vector<std::string> labels;
    YearMonth start{2000, 1};
};

/// Random row-stochastic scheme whose nonzero pattern is connected.
WeightScheme random_weight_scheme(int units, int neighbours, Rng& rng);

SimulatedGvar simulate_gvar(const DgpSpec& spec);

/// Regenerates a panel from a known reduced form: the first p rows are taken
/// from `initial`, later rows follow the recursion with the supplied
/// innovations (already on the reduced-form scale).
Eigen::MatrixXd simulate_reduced_form_path(const GvarSystem& system, const Eigen::MatrixXd& initial,
                                           const Eigen::MatrixXd& shocks,
                                           const Eigen::MatrixXd& innovations);

/// Homogeneous-parameter spatial panel DGP used to validate the comparison
/// estimator.
struct SdpmDgpSpec {
    int units = 25;
    int periods = 200;
    std::uint64_t seed = 1;

    double spatial = 0.5;       // contemporaneous spatial coefficient
    double own_lag = 0.2;
    double spatial_lag = -0.1;
    double shock_impact = -0.05;
    double noise_variance = 1.0;
    CoefficientRange fixed_effect_range{-0.5, 0.5};

    std::optional<WeightScheme> scheme;
    int neighbours = 4;
    double hit_probability = 0.1;
    double share_alpha = 2.0;
    double share_beta = 5.0;
    int burn_in = 100;
};

struct SimulatedSdpm {
    Eigen::MatrixXd y;  // T x N
    Eigen::MatrixXd s;  // T x N
    WeightScheme scheme;
    Eigen::VectorXd fixed_effects;
};

SimulatedSdpm simulate_sdpm(const SdpmDgpSpec& spec);

/// Writes a simulated dataset in the ingestion formats: a wide activity-panel
/// file in levels (zero-based running sums of y) and a long shock-panel file.
void export_simulated_dataset(const SimulatedGvar& sim, const std::filesystem::path& activity_path,
                              const std::filesystem::path& shock_path);

}  // namespace gvarkit

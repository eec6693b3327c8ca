#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gvarkit/estimation.hpp"
#include "gvarkit/weights.hpp"

namespace gvarkit {

/// Homogeneous-parameter spatial dynamic panel with unit fixed effects:
/// y_it = p (W y_t)_i + gamma y_{i,t-1} + rho (W y_{t-1})_i + beta s_it + c_i + e_it.
struct SdpmEstimate {
    double spatial = 0.0;        // p
    double own_lag = 0.0;        // gamma
    double spatial_lag = 0.0;    // rho
    double shock_impact = 0.0;   // beta
    std::array<double, 4> std_errors{};  // same order
    Eigen::VectorXd fixed_effects;
    double sigma2 = 0.0;
    double log_likelihood = 0.0;
    Eigen::Index t_used = 0;  // time periods entering the likelihood
    bool bias_corrected = false;
    int bias_iterations = 0;
    bool converged = true;

    Eigen::Vector4d coefficients() const {
        return {spatial, own_lag, spatial_lag, shock_impact};
    }
};

/// Quasi-maximum-likelihood fit: fixed effects removed by the within
/// transformation, (gamma, rho, beta) profiled out by least squares at each
/// spatial coefficient, and the concentrated likelihood (including the
/// log-determinant of I - pW) maximised by grid search plus golden-section
/// refinement over the stable interval.
SdpmEstimate estimate_sdpm(const Eigen::MatrixXd& panel, const WeightScheme& scheme,
                           const Eigen::MatrixXd& shocks);

/// Same model with the spatial coefficient pinned; at zero this reduces to
/// plain fixed-effects least squares on the non-spatial regressors.
SdpmEstimate estimate_sdpm_fixed_spatial(const Eigen::MatrixXd& panel, const WeightScheme& scheme,
                                         const Eigen::MatrixXd& shocks, double spatial);

/// Concentrated log-likelihood as a function of the spatial coefficient,
/// with the slope coefficients and the error variance profiled out.
double sdpm_profile_log_likelihood(const Eigen::MatrixXd& panel, const WeightScheme& scheme,
                                   const Eigen::MatrixXd& shocks, double spatial);

struct BiasCorrectConfig {
    int sims_per_iteration = 200;
    double tol = 1e-3;           // max-abs parameter change declaring a fixed point
    std::uint64_t seed = 20250101;
    bool require_convergence = false;  // throw NonConvergence at the iteration cap
};

/// Simulation-based iterative bias subtraction: at each step, panels are
/// simulated from the current parameter values (shock series and fixed
/// effects held at their estimates), re-estimated, and the mean bias
/// subtracted from the uncorrected estimate. `iterations` caps the steps;
/// zero returns the input unchanged.
SdpmEstimate bias_correct(const SdpmEstimate& estimate, const Eigen::MatrixXd& panel,
                          const WeightScheme& scheme, const Eigen::MatrixXd& shocks,
                          int iterations, const BiasCorrectConfig& config = {});

/// Aggregate autoregressive distributed-lag regression: the first difference
/// of the national activity series on its own lags, the national shock and a
/// constant.
struct ArdlEstimate {
    Eigen::VectorXd own_lag;     // lag coefficients on the differenced series
    double shock_impact = 0.0;
    double constant = 0.0;
    Eigen::VectorXd own_lag_se;
    double shock_se = 0.0;
    double constant_se = 0.0;
    double sigma2 = 0.0;
    Eigen::Index t_eff = 0;
};

ArdlEstimate estimate_ardl_us(const Eigen::VectorXd& activity_levels,
                              const Eigen::VectorXd& national_shock, int lags = 2);

/// Cross-state moments of the estimated shock-impact coefficients. The
/// standard deviation uses the sample (1/(N-1)) convention.
struct ThetaSummary {
    double mean = 0.0;
    double std_dev = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::string argmin_state;
    std::string argmax_state;
};

ThetaSummary theta_summary(const std::vector<ArxEstimate>& estimates,
                           const std::vector<std::string>& labels);

}  // namespace gvarkit

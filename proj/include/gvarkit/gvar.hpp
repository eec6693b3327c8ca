#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gvarkit/estimation.hpp"
#include "gvarkit/weights.hpp"

namespace gvarkit {

/// Structural stacked form: G y_t = alpha + sum_l H_l y_{t-l} + diag(theta) s_t + u_t.
struct StackedGvar {
    std::vector<std::string> labels;
    Eigen::MatrixXd g;               // N x N, unit diagonal
    std::vector<Eigen::MatrixXd> h;  // one N x N block per lag
    Eigen::VectorXd theta;           // diagonal of the impact matrix
    Eigen::VectorXd alpha;
    Eigen::VectorXd sigma2;  // structural residual variances

    Eigen::Index size() const { return g.rows(); }
    int lag_order() const { return static_cast<int>(h.size()); }
};

/// Reduced form: y_t = c + sum_l F_l y_{t-l} + Lambda s_t + eps_t. Lambda's
/// off-diagonal entries carry contemporaneous cross-unit shock transmission.
struct GvarSystem {
    StackedGvar stacked;
    Eigen::VectorXd c;
    std::vector<Eigen::MatrixXd> f;
    Eigen::MatrixXd lambda;
    Eigen::MatrixXd sigma_eps;
    Eigen::PartialPivLU<Eigen::MatrixXd> g_lu;  // factorisation of G, reused by callers

    Eigen::Index size() const { return stacked.size(); }
    int lag_order() const { return stacked.lag_order(); }
};

/// Builds the stacked system from per-unit estimates, padding units with
/// fewer lags than the system maximum with zero coefficients.
StackedGvar assemble(const std::vector<ArxEstimate>& estimates, const WeightScheme& scheme);

/// Solves out the contemporaneous block. "G^{-1} X" is computed by LU solve,
/// never by explicit inversion. Throws IllConditioned when the condition
/// number estimate exceeds `condition_bound`.
GvarSystem solve_reduced_form(const StackedGvar& stacked, double condition_bound = 1e10);

Eigen::MatrixXd companion_matrix(const GvarSystem& system);

struct Stability {
    double spectral_radius = 0.0;
    bool stable = false;
};

Stability stability(const GvarSystem& system, double tol = 1e-8);

/// One fitted model: per-unit estimates plus the solved system and the
/// time-aligned residual matrix (all units share the same alignment row).
struct GvarFit {
    std::vector<ArxEstimate> estimates;
    std::vector<ArxSpec> specs;
    GvarSystem system;
    Eigen::MatrixXd residuals;  // (T - p) x N
    WeightScheme scheme;
    Eigen::MatrixXd y;  // T x N data the model was fitted on
    Eigen::MatrixXd s;  // T x N shock regressors
    std::vector<std::string> warnings;
};

struct LagChoice {
    bool select_by_bic = true;
    int max_lags = 2;      // BIC search bound
    int fixed_own = 2;     // used when select_by_bic is false
    int fixed_foreign = 2;
    bool include_constant = true;
};

/// Full estimation pass: per-unit lag choice, aligned estimation, assembly
/// and reduced-form solve.
GvarFit fit_gvar(const Eigen::MatrixXd& y, const Eigen::MatrixXd& shocks,
                 const WeightScheme& scheme, const LagChoice& lags = {});

}  // namespace gvarkit

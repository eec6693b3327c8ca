#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace gvarkit {

/// Plain least squares with rank checking.
struct OlsFit {
    Eigen::VectorXd coef;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd residuals;
    double rss = 0.0;
    double sigma2 = 0.0;     // rss / (t_eff - k)
    double sigma2_ml = 0.0;  // rss / t_eff
    Eigen::Index t_eff = 0;
    Eigen::Index k = 0;
};

OlsFit ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& response);

/// Lag structure of a unit's equation. The contemporaneous rest-of-system
/// average is always included whenever foreign terms are enabled; foreign_lags
/// counts the additional lagged averages.
struct ArxSpec {
    int own_lags = 1;      // >= 0
    int foreign_lags = 1;  // >= 0
    bool include_constant = true;
    bool include_shock = true;
    bool include_foreign = true;

    int alignment() const { return std::max(own_lags, include_foreign ? foreign_lags : 0); }
};

struct ArxEstimate {
    ArxSpec spec;
    double intercept = 0.0;
    Eigen::VectorXd own_lag;      // own_lags entries
    double foreign_now = 0.0;     // contemporaneous rest-of-system coefficient
    Eigen::VectorXd foreign_lag;  // foreign_lags entries
    double shock = 0.0;           // impact coefficient on the shock regressor

    double intercept_se = 0.0;
    Eigen::VectorXd own_lag_se;
    double foreign_now_se = 0.0;
    Eigen::VectorXd foreign_lag_se;
    double shock_se = 0.0;

    double sigma2 = 0.0;     // unbiased residual variance
    double sigma2_ml = 0.0;  // maximum-likelihood scaling
    Eigen::VectorXd residuals;
    Eigen::Index t_eff = 0;
    Eigen::Index n_params = 0;
    double bic = 0.0;
};

/// OLS fit of one unit's equation: own lags, the (contemporaneous and lagged)
/// rest-of-system average, and the shock regressor. `align_at` fixes the first
/// usable observation index; pass -1 for the spec's natural alignment. Series
/// must share the same grid.
ArxEstimate estimate_arx(const Eigen::VectorXd& y, const Eigen::VectorXd& y_foreign,
                         const Eigen::VectorXd& shock, const ArxSpec& spec, int align_at = -1);

double bic_value(double sigma2_ml, Eigen::Index k, Eigen::Index t_eff);

struct LagCandidate {
    int own_lags = 0;
    int foreign_lags = 0;
    Eigen::Index k = 0;
    Eigen::Index t_eff = 0;
    double sigma2_ml = 0.0;
    double bic = 0.0;
};

struct LagSelection {
    int own_lags = 0;
    int foreign_lags = 0;
    std::vector<LagCandidate> candidates;
};

/// Grid search over (own, foreign) lag orders up to max_lags, all candidates
/// estimated on the common sample aligned at max_lags. Ties break toward the
/// smaller total lag count.
LagSelection select_lag_bic(const Eigen::VectorXd& y, const Eigen::VectorXd& y_foreign,
                            const Eigen::VectorXd& shock, int max_lags,
                            bool include_constant = true, bool include_shock = true,
                            bool include_foreign = true);

enum class Deterministic { constant, constant_trend };

struct AdfResult {
    double statistic = 0.0;
    double critical_5pct = 0.0;
    bool reject_at_5pct = false;
    int lags = 0;
};

/// Augmented Dickey-Fuller t-test on the lagged level, with large-sample 5%
/// critical values (-2.86 constant, -3.41 constant+trend).
AdfResult adf_test(const Eigen::VectorXd& series, int lags,
                   Deterministic deterministic = Deterministic::constant);

struct FTestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    Eigen::Index df1 = 0;
    Eigen::Index df2 = 0;
};

/// Joint F-test of eleven month dummies added to an AR(ar_order) regression.
/// `first_month` is the calendar month (1..12) of the first observation.
FTestResult seasonality_ftest(const Eigen::VectorXd& series, int ar_order, int first_month = 1);

struct GrangerResult {
    FTestResult y_to_foreign;  // do lags of y help predict the foreign average?
    FTestResult foreign_to_y;
};

/// F-tests of excluded lags in bivariate regressions on first differences of
/// the two inputs.
GrangerResult granger_test(const Eigen::VectorXd& y, const Eigen::VectorXd& y_foreign,
                           int lag_order);

// Panel-level helpers shared by the estimation pipeline.

/// First differences along time: output row t equals input row t+1 minus
/// input row t.
Eigen::MatrixXd difference_panel(const Eigen::MatrixXd& levels);

/// Rest-of-system averages: column i of the result is the scheme-weighted
/// average of the other columns.
Eigen::MatrixXd foreign_averages(const Eigen::MatrixXd& panel, const Eigen::MatrixXd& weights);

}  // namespace gvarkit

#include "gvarkit/estimation.hpp"

#include <boost/math/distributions/fisher_f.hpp>
#include <cmath>

#include "gvarkit/error.hpp"

namespace gvarkit {

OlsFit ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& response) {
    Eigen::Index t = design.rows();
    Eigen::Index k = design.cols();
    if (t != response.size()) fail(Errc::dimension_mismatch, "design/response rows differ");
    if (t <= k) fail(Errc::sample_too_short, "need more observations than regressors");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < k) fail(Errc::singular_design, "collinear regressors");

    OlsFit fit;
    fit.coef = qr.solve(response);
    fit.residuals = response - design * fit.coef;
    fit.rss = fit.residuals.squaredNorm();
    fit.t_eff = t;
    fit.k = k;
    fit.sigma2 = fit.rss / static_cast<double>(t - k);
    fit.sigma2_ml = fit.rss / static_cast<double>(t);

    // (X'X)^{-1} via the R factor of the pivoted QR.
    Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    Eigen::MatrixXd r_inv = r.inverse();
    Eigen::MatrixXd xtx_inv_perm = r_inv * r_inv.transpose();
    Eigen::MatrixXd p = qr.colsPermutation();
    Eigen::MatrixXd xtx_inv = p * xtx_inv_perm * p.transpose();
    fit.std_errors = (fit.sigma2 * xtx_inv.diagonal().array()).sqrt();
    return fit;
}

namespace {

struct ArxDesign {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
    // Column offsets; -1 when absent.
    int constant = -1;
    int own = -1;      // first own-lag column
    int foreign0 = -1; // contemporaneous foreign column
    int foreign = -1;  // first foreign-lag column
    int shock = -1;
};

ArxDesign build_arx_design(const Eigen::VectorXd& y, const Eigen::VectorXd& y_foreign,
                           const Eigen::VectorXd& shock, const ArxSpec& spec, int align_at) {
    Eigen::Index t_total = y.size();
    if (spec.include_foreign && y_foreign.size() != t_total) {
        fail(Errc::dimension_mismatch, "foreign series length differs");
    }
    if (spec.include_shock && shock.size() != t_total) {
        fail(Errc::dimension_mismatch, "shock series length differs");
    }
    int first = align_at >= 0 ? align_at : spec.alignment();
    if (first < spec.alignment()) {
        fail(Errc::dimension_mismatch, "alignment earlier than the spec's lag depth");
    }
    Eigen::Index t_eff = t_total - first;
    Eigen::Index k = (spec.include_constant ? 1 : 0) + spec.own_lags +
                     (spec.include_foreign ? 1 + spec.foreign_lags : 0) +
                     (spec.include_shock ? 1 : 0);
    if (t_eff < k + 6) fail(Errc::sample_too_short, "effective sample too short");

    ArxDesign d;
    d.x.resize(t_eff, k);
    d.y.resize(t_eff);
    int col = 0;
    if (spec.include_constant) {
        d.constant = col;
        d.x.col(col++).setOnes();
    }
    if (spec.own_lags > 0) d.own = col;
    for (int l = 1; l <= spec.own_lags; ++l) {
        d.x.col(col++) = y.segment(first - l, t_eff);
    }
    if (spec.include_foreign) {
        d.foreign0 = col;
        d.x.col(col++) = y_foreign.segment(first, t_eff);
        if (spec.foreign_lags > 0) d.foreign = col;
        for (int l = 1; l <= spec.foreign_lags; ++l) {
            d.x.col(col++) = y_foreign.segment(first - l, t_eff);
        }
    }
    if (spec.include_shock) {
        d.shock = col;
        d.x.col(col++) = shock.segment(first, t_eff);
    }
    d.y = y.segment(first, t_eff);
    return d;
}

}  // namespace

ArxEstimate estimate_arx(const Eigen::VectorXd& y, const Eigen::VectorXd& y_foreign,
                         const Eigen::VectorXd& shock, const ArxSpec& spec, int align_at) {
    ArxDesign d = build_arx_design(y, y_foreign, shock, spec, align_at);
    OlsFit fit = ols(d.x, d.y);

    ArxEstimate est;
    est.spec = spec;
    est.own_lag = Eigen::VectorXd::Zero(spec.own_lags);
    est.own_lag_se = Eigen::VectorXd::Zero(spec.own_lags);
    est.foreign_lag = Eigen::VectorXd::Zero(spec.foreign_lags);
    est.foreign_lag_se = Eigen::VectorXd::Zero(spec.foreign_lags);
    if (d.constant >= 0) {
        est.intercept = fit.coef(d.constant);
        est.intercept_se = fit.std_errors(d.constant);
    }
    for (int l = 0; l < spec.own_lags; ++l) {
        est.own_lag(l) = fit.coef(d.own + l);
        est.own_lag_se(l) = fit.std_errors(d.own + l);
    }
    if (d.foreign0 >= 0) {
        est.foreign_now = fit.coef(d.foreign0);
        est.foreign_now_se = fit.std_errors(d.foreign0);
        for (int l = 0; l < spec.foreign_lags; ++l) {
            est.foreign_lag(l) = fit.coef(d.foreign + l);
            est.foreign_lag_se(l) = fit.std_errors(d.foreign + l);
        }
    }
    if (d.shock >= 0) {
        est.shock = fit.coef(d.shock);
        est.shock_se = fit.std_errors(d.shock);
    }
    est.sigma2 = fit.sigma2;
    est.sigma2_ml = fit.sigma2_ml;
    est.residuals = std::move(fit.residuals);
    est.t_eff = fit.t_eff;
    est.n_params = fit.k;
    est.bic = bic_value(est.sigma2_ml, fit.k, fit.t_eff);
    return est;
}

double bic_value(double sigma2_ml, Eigen::Index k, Eigen::Index t_eff) {
    return static_cast<double>(t_eff) * std::log(sigma2_ml) +
           static_cast<double>(k) * std::log(static_cast<double>(t_eff));
}

LagSelection select_lag_bic(const Eigen::VectorXd& y, const Eigen::VectorXd& y_foreign,
                            const Eigen::VectorXd& shock, int max_lags, bool include_constant,
                            bool include_shock, bool include_foreign) {
    if (max_lags < 1) fail(Errc::config_error, "max_lags must be at least 1");

    LagSelection selection;
    bool have_best = false;
    double best_bic = 0.0;
    // Candidates ordered by total lag count so a tie keeps the smaller model.
    for (int total = 0; total <= 2 * max_lags; ++total) {
        for (int own = 0; own <= std::min(total, max_lags); ++own) {
            int foreign = total - own;
            if (foreign > max_lags) continue;
            if (!include_foreign && foreign > 0) continue;
            ArxSpec spec{own, foreign, include_constant, include_shock, include_foreign};
            ArxEstimate est = estimate_arx(y, y_foreign, shock, spec, max_lags);
            selection.candidates.push_back(
                {own, foreign, est.n_params, est.t_eff, est.sigma2_ml, est.bic});
            if (!have_best || est.bic < best_bic) {
                have_best = true;
                best_bic = est.bic;
                selection.own_lags = own;
                selection.foreign_lags = foreign;
            }
        }
    }
    return selection;
}

AdfResult adf_test(const Eigen::VectorXd& series, int lags, Deterministic deterministic) {
    Eigen::Index t = series.size();
    if (t <= 25) fail(Errc::sample_too_short, "unit-root test needs more than 25 observations");
    if (lags < 0) fail(Errc::config_error, "negative lag order");

    Eigen::VectorXd diff = series.tail(t - 1) - series.head(t - 1);
    Eigen::Index t_eff = t - 1 - lags;
    int det_cols = deterministic == Deterministic::constant ? 1 : 2;
    Eigen::Index k = det_cols + 1 + lags;
    if (t_eff <= k + 5) fail(Errc::sample_too_short, "too few observations for the lag order");

    Eigen::MatrixXd x(t_eff, k);
    Eigen::VectorXd dy(t_eff);
    for (Eigen::Index i = 0; i < t_eff; ++i) {
        Eigen::Index idx = lags + i;  // index into diff; level lag is series(idx)
        int col = 0;
        x(i, col++) = 1.0;
        if (deterministic == Deterministic::constant_trend) {
            x(i, col++) = static_cast<double>(i + 1);
        }
        x(i, col++) = series(idx);
        for (int l = 1; l <= lags; ++l) x(i, col++) = diff(idx - l);
        dy(i) = diff(idx);
    }
    OlsFit fit = ols(x, dy);
    int level_col = det_cols;

    AdfResult result;
    result.statistic = fit.coef(level_col) / fit.std_errors(level_col);
    result.critical_5pct = deterministic == Deterministic::constant ? -2.86 : -3.41;
    result.reject_at_5pct = result.statistic < result.critical_5pct;
    result.lags = lags;
    return result;
}

namespace {

FTestResult f_test_nested(const OlsFit& restricted, const OlsFit& unrestricted,
                          Eigen::Index restrictions) {
    FTestResult out;
    out.df1 = restrictions;
    out.df2 = unrestricted.t_eff - unrestricted.k;
    double num = (restricted.rss - unrestricted.rss) / static_cast<double>(out.df1);
    double den = unrestricted.rss / static_cast<double>(out.df2);
    if (den <= 0.0) fail(Errc::singular_design, "zero residual variance in F-test");
    out.statistic = num / den;
    boost::math::fisher_f dist(static_cast<double>(out.df1), static_cast<double>(out.df2));
    out.p_value = boost::math::cdf(boost::math::complement(dist, std::max(out.statistic, 0.0)));
    return out;
}

}  // namespace

FTestResult seasonality_ftest(const Eigen::VectorXd& series, int ar_order, int first_month) {
    Eigen::Index t = series.size();
    if (t < 36 + ar_order) fail(Errc::sample_too_short, "need at least three years of months");
    if (first_month < 1 || first_month > 12) fail(Errc::config_error, "first_month out of range");

    Eigen::Index t_eff = t - ar_order;
    Eigen::Index k_restricted = 1 + ar_order;
    Eigen::MatrixXd x_r(t_eff, k_restricted);
    Eigen::MatrixXd x_u(t_eff, k_restricted + 11);
    Eigen::VectorXd yv(t_eff);
    for (Eigen::Index i = 0; i < t_eff; ++i) {
        Eigen::Index idx = ar_order + i;
        x_r(i, 0) = 1.0;
        for (int l = 1; l <= ar_order; ++l) x_r(i, l) = series(idx - l);
        x_u.row(i).head(k_restricted) = x_r.row(i);
        x_u.row(i).tail(11).setZero();
        int month = (first_month - 1 + static_cast<int>(idx)) % 12 + 1;  // 1..12
        if (month >= 2) x_u(i, k_restricted + month - 2) = 1.0;          // January is the base
        yv(i) = series(idx);
    }
    OlsFit restricted = ols(x_r, yv);
    OlsFit unrestricted = ols(x_u, yv);
    return f_test_nested(restricted, unrestricted, 11);
}

GrangerResult granger_test(const Eigen::VectorXd& y, const Eigen::VectorXd& y_foreign,
                           int lag_order) {
    if (lag_order < 1) fail(Errc::config_error, "lag order must be positive");
    if (y.size() != y_foreign.size()) fail(Errc::dimension_mismatch, "series lengths differ");
    if (y.size() <= 4 * lag_order) fail(Errc::sample_too_short, "need more than 4x lag order");

    Eigen::Index t = y.size() - 1;
    Eigen::VectorXd dy = y.tail(t) - y.head(t);
    Eigen::VectorXd df = y_foreign.tail(t) - y_foreign.head(t);

    auto one_direction = [&](const Eigen::VectorXd& dep, const Eigen::VectorXd& other) {
        Eigen::Index t_eff = t - lag_order;
        Eigen::Index k_r = 1 + lag_order;
        Eigen::MatrixXd x_r(t_eff, k_r);
        Eigen::MatrixXd x_u(t_eff, k_r + lag_order);
        Eigen::VectorXd yv(t_eff);
        for (Eigen::Index i = 0; i < t_eff; ++i) {
            Eigen::Index idx = lag_order + i;
            x_r(i, 0) = 1.0;
            for (int l = 1; l <= lag_order; ++l) x_r(i, l) = dep(idx - l);
            x_u.row(i).head(k_r) = x_r.row(i);
            for (int l = 1; l <= lag_order; ++l) x_u(i, k_r + l - 1) = other(idx - l);
            yv(i) = dep(idx);
        }
        OlsFit restricted = ols(x_r, yv);
        OlsFit unrestricted = ols(x_u, yv);
        return f_test_nested(restricted, unrestricted, lag_order);
    };

    GrangerResult result;
    result.y_to_foreign = one_direction(df, dy);
    result.foreign_to_y = one_direction(dy, df);
    return result;
}

Eigen::MatrixXd difference_panel(const Eigen::MatrixXd& levels) {
    if (levels.rows() < 2) fail(Errc::sample_too_short, "need at least two periods to difference");
    return levels.bottomRows(levels.rows() - 1) - levels.topRows(levels.rows() - 1);
}

Eigen::MatrixXd foreign_averages(const Eigen::MatrixXd& panel, const Eigen::MatrixXd& weights) {
    if (panel.cols() != weights.rows() || weights.rows() != weights.cols()) {
        fail(Errc::dimension_mismatch, "panel and weight matrix sizes differ");
    }
    return panel * weights.transpose();
}

}  // namespace gvarkit

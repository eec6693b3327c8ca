#include "gvarkit/gvar.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "gvarkit/csv.hpp"
#include "gvarkit/error.hpp"

namespace gvarkit {

StackedGvar assemble(const std::vector<ArxEstimate>& estimates, const WeightScheme& scheme) {
    Eigen::Index n = scheme.size();
    if (static_cast<Eigen::Index>(estimates.size()) != n) {
        fail(Errc::dimension_mismatch, "one estimate per unit required");
    }

    int p = 0;
    for (const auto& est : estimates) {
        p = std::max({p, est.spec.own_lags, est.spec.foreign_lags});
    }

    StackedGvar stacked;
    stacked.labels = scheme.labels;
    stacked.g = Eigen::MatrixXd::Identity(n, n);
    stacked.h.assign(static_cast<std::size_t>(std::max(p, 1)), Eigen::MatrixXd::Zero(n, n));
    stacked.theta.resize(n);
    stacked.alpha.resize(n);
    stacked.sigma2.resize(n);

    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& est = estimates[static_cast<std::size_t>(i)];
        // Row i of G is (1, -gamma_0) W_i: one on the diagonal, the
        // contemporaneous coefficient spread over the unit's weight row.
        stacked.g.row(i) -= est.foreign_now * scheme.w.row(i);
        stacked.g(i, i) = 1.0;  // w_ii = 0, so this just restates the unit diagonal
        for (int l = 0; l < static_cast<int>(stacked.h.size()); ++l) {
            auto& h = stacked.h[static_cast<std::size_t>(l)];
            if (l < est.spec.own_lags) h(i, i) = est.own_lag(l);
            if (l < est.spec.foreign_lags) h.row(i) += est.foreign_lag(l) * scheme.w.row(i);
        }
        stacked.theta(i) = est.shock;
        stacked.alpha(i) = est.intercept;
        stacked.sigma2(i) = est.sigma2;
    }
    return stacked;
}

GvarSystem solve_reduced_form(const StackedGvar& stacked, double condition_bound) {
    Eigen::Index n = stacked.size();

    GvarSystem system;
    system.stacked = stacked;
    system.g_lu.compute(stacked.g);
    double rcond = system.g_lu.rcond();
    if (!(rcond > 0.0) || !std::isfinite(rcond)) {
        fail(Errc::singular_g, "contemporaneous matrix is singular");
    }
    if (1.0 / rcond > condition_bound) {
        fail(Errc::ill_conditioned,
             "condition number estimate " + format_double(1.0 / rcond) + " exceeds bound");
    }

    system.c = system.g_lu.solve(stacked.alpha);
    system.f.reserve(stacked.h.size());
    for (const auto& h : stacked.h) system.f.push_back(system.g_lu.solve(h));
    Eigen::MatrixXd theta = stacked.theta.asDiagonal();
    system.lambda = system.g_lu.solve(theta);

    // Sigma_eps = G^{-1} diag(sigma2) G^{-T}, formed as M M' with
    // M = G^{-1} diag(sigma), so it stays symmetric PSD.
    Eigen::MatrixXd sd = stacked.sigma2.array().max(0.0).sqrt().matrix().asDiagonal();
    Eigen::MatrixXd m = system.g_lu.solve(sd);
    system.sigma_eps = m * m.transpose();

    if (system.sigma_eps.rows() != n) fail(Errc::dimension_mismatch, "internal size mismatch");
    return system;
}

Eigen::MatrixXd companion_matrix(const GvarSystem& system) {
    Eigen::Index n = system.size();
    int p = system.lag_order();
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n * p, n * p);
    for (int l = 0; l < p; ++l) {
        companion.block(0, l * n, n, n) = system.f[static_cast<std::size_t>(l)];
    }
    for (int l = 1; l < p; ++l) {
        companion.block(l * n, (l - 1) * n, n, n).setIdentity();
    }
    return companion;
}

Stability stability(const GvarSystem& system, double tol) {
    Eigen::MatrixXd companion = companion_matrix(system);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    Stability result;
    result.spectral_radius = solver.eigenvalues().cwiseAbs().maxCoeff();
    result.stable = result.spectral_radius < 1.0 - tol;
    return result;
}

GvarFit fit_gvar(const Eigen::MatrixXd& y, const Eigen::MatrixXd& shocks,
                 const WeightScheme& scheme, const LagChoice& lags) {
    Eigen::Index n = scheme.size();
    if (y.cols() != n || shocks.cols() != n || shocks.rows() != y.rows()) {
        fail(Errc::dimension_mismatch, "panel, shocks and weights must agree");
    }

    GvarFit fit;
    fit.scheme = scheme;
    fit.y = y;
    fit.s = shocks;

    Eigen::MatrixXd foreign = foreign_averages(y, scheme.w);

    fit.specs.reserve(static_cast<std::size_t>(n));
    int system_lags = 1;
    for (Eigen::Index i = 0; i < n; ++i) {
        ArxSpec spec;
        spec.include_constant = lags.include_constant;
        if (lags.select_by_bic) {
            LagSelection sel = select_lag_bic(y.col(i), foreign.col(i), shocks.col(i),
                                              lags.max_lags, lags.include_constant);
            spec.own_lags = sel.own_lags;
            spec.foreign_lags = sel.foreign_lags;
        } else {
            spec.own_lags = lags.fixed_own;
            spec.foreign_lags = lags.fixed_foreign;
        }
        system_lags = std::max({system_lags, spec.own_lags, spec.foreign_lags});
        fit.specs.push_back(spec);
    }

    // All units aligned at the system lag depth so residual rows share dates.
    fit.estimates.reserve(static_cast<std::size_t>(n));
    fit.residuals.resize(y.rows() - system_lags, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        ArxEstimate est = estimate_arx(y.col(i), foreign.col(i), shocks.col(i),
                                       fit.specs[static_cast<std::size_t>(i)], system_lags);
        fit.residuals.col(i) = est.residuals;
        fit.estimates.push_back(std::move(est));
    }

    StackedGvar stacked = assemble(fit.estimates, scheme);
    while (stacked.lag_order() < system_lags) {
        stacked.h.push_back(Eigen::MatrixXd::Zero(n, n));
    }
    fit.system = solve_reduced_form(stacked);

    Stability stab = stability(fit.system);
    if (!stab.stable) {
        fit.warnings.push_back("reduced form has spectral radius " +
                               format_double(stab.spectral_radius) +
                               "; dynamic responses will not converge");
    }
    return fit;
}

}  // namespace gvarkit

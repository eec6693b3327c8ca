#include "gvarkit/alternatives.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "gvarkit/error.hpp"
#include "gvarkit/rng.hpp"

namespace gvarkit {

namespace {

/// Sufficient statistics for the concentrated spatial likelihood. After the
/// within transformation everything the profile needs reduces to a handful of
/// cross-products, so each likelihood evaluation is O(1) plus the
/// log-determinant term.
struct SdpmWorkspace {
    Eigen::Index n = 0;
    Eigen::Index t_used = 0;

    Eigen::VectorXd dep;  // stacked demeaned dependent variable
    Eigen::VectorXd sp;   // stacked demeaned spatial contemporaneous term
    Eigen::MatrixXd x;    // stacked demeaned [own lag, spatial lag, shock]

    Eigen::Matrix3d xtx;
    Eigen::Vector3d xt_dep;
    Eigen::Vector3d xt_sp;
    double dep_dep = 0.0;
    double dep_sp = 0.0;
    double sp_sp = 0.0;

    Eigen::VectorXcd eigenvalues;  // of the weight matrix

    // Raw (not demeaned) per-cell values, used to back out fixed effects.
    Eigen::MatrixXd raw_dep, raw_sp, raw_own, raw_splag, raw_shock;

    double log_det(double p) const {
        double total = 0.0;
        for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
            double re = 1.0 - p * eigenvalues(i).real();
            double im = -p * eigenvalues(i).imag();
            total += 0.5 * std::log(re * re + im * im);
        }
        return total;
    }

    /// Profiled (gamma, rho, beta) at a given spatial coefficient.
    Eigen::Vector3d profile(double p) const {
        return xtx.ldlt().solve(xt_dep - p * xt_sp);
    }

    double rss(double p, const Eigen::Vector3d& b) const {
        double zz = dep_dep - 2.0 * p * dep_sp + p * p * sp_sp;
        Eigen::Vector3d xtz = xt_dep - p * xt_sp;
        return zz - 2.0 * b.dot(xtz) + b.dot(xtx * b);
    }

    /// Concentrated log-likelihood in p alone.
    double concentrated(double p) const {
        Eigen::Vector3d b = profile(p);
        double nt = static_cast<double>(n * t_used);
        double s2 = std::max(rss(p, b) / nt, 1e-300);
        return -0.5 * nt * (std::log(2.0 * std::numbers::pi) + 1.0) - 0.5 * nt * std::log(s2) +
               static_cast<double>(t_used) * log_det(p);
    }

    /// Log-likelihood with sigma2 profiled, as a function of all four
    /// coefficients (used for the numerical Hessian).
    double profiled(const Eigen::Vector4d& phi) const {
        double nt = static_cast<double>(n * t_used);
        Eigen::Vector3d b = phi.tail(3);
        double s2 = std::max(rss(phi(0), b) / nt, 1e-300);
        return -0.5 * nt * (std::log(2.0 * std::numbers::pi) + 1.0) - 0.5 * nt * std::log(s2) +
               static_cast<double>(t_used) * log_det(phi(0));
    }
};

SdpmWorkspace build_workspace(const Eigen::MatrixXd& panel, const WeightScheme& scheme,
                              const Eigen::MatrixXd& shocks) {
    Eigen::Index t_total = panel.rows();
    Eigen::Index n = panel.cols();
    if (scheme.size() != n || shocks.rows() != t_total || shocks.cols() != n) {
        fail(Errc::dimension_mismatch, "panel, shocks and weights must agree");
    }
    if (t_total < 10) fail(Errc::sample_too_short, "need at least ten periods");

    SdpmWorkspace w;
    w.n = n;
    w.t_used = t_total - 1;

    Eigen::MatrixXd spatial = panel * scheme.w.transpose();

    w.raw_dep = panel.bottomRows(w.t_used);
    w.raw_sp = spatial.bottomRows(w.t_used);
    w.raw_own = panel.topRows(w.t_used);
    w.raw_splag = spatial.topRows(w.t_used);
    w.raw_shock = shocks.bottomRows(w.t_used);

    auto demean = [&](const Eigen::MatrixXd& m) {
        return (m.rowwise() - m.colwise().mean()).eval();
    };
    Eigen::MatrixXd dep = demean(w.raw_dep);
    Eigen::MatrixXd sp = demean(w.raw_sp);
    Eigen::MatrixXd own = demean(w.raw_own);
    Eigen::MatrixXd splag = demean(w.raw_splag);
    Eigen::MatrixXd shock = demean(w.raw_shock);

    Eigen::Index cells = w.t_used * n;
    w.dep = Eigen::Map<Eigen::VectorXd>(dep.data(), cells);
    w.sp = Eigen::Map<Eigen::VectorXd>(sp.data(), cells);
    w.x.resize(cells, 3);
    w.x.col(0) = Eigen::Map<Eigen::VectorXd>(own.data(), cells);
    w.x.col(1) = Eigen::Map<Eigen::VectorXd>(splag.data(), cells);
    w.x.col(2) = Eigen::Map<Eigen::VectorXd>(shock.data(), cells);

    w.xtx = w.x.transpose() * w.x;
    w.xt_dep = w.x.transpose() * w.dep;
    w.xt_sp = w.x.transpose() * w.sp;
    w.dep_dep = w.dep.squaredNorm();
    w.dep_sp = w.dep.dot(w.sp);
    w.sp_sp = w.sp.squaredNorm();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> check(w.xtx);
    if (check.eigenvalues().minCoeff() <= 1e-10 * std::max(check.eigenvalues().maxCoeff(), 1.0)) {
        fail(Errc::singular_design, "within-transformed regressors are collinear");
    }

    Eigen::EigenSolver<Eigen::MatrixXd> eig(scheme.w, /*computeEigenvectors=*/false);
    w.eigenvalues = eig.eigenvalues();
    return w;
}

}  // namespace

namespace {

SdpmEstimate finish_estimate(const SdpmWorkspace& w, double spatial) {
    SdpmEstimate est;
    Eigen::Vector3d slope = w.profile(spatial);
    est.spatial = spatial;
    est.own_lag = slope(0);
    est.spatial_lag = slope(1);
    est.shock_impact = slope(2);
    est.t_used = w.t_used;
    double nt = static_cast<double>(w.n * w.t_used);
    est.sigma2 = w.rss(spatial, slope) / nt;
    est.log_likelihood = w.concentrated(spatial);
    est.fixed_effects = (w.raw_dep - spatial * w.raw_sp - est.own_lag * w.raw_own -
                         est.spatial_lag * w.raw_splag - est.shock_impact * w.raw_shock)
                            .colwise()
                            .mean();
    return est;
}

}  // namespace

SdpmEstimate estimate_sdpm_fixed_spatial(const Eigen::MatrixXd& panel, const WeightScheme& scheme,
                                         const Eigen::MatrixXd& shocks, double spatial) {
    SdpmWorkspace w = build_workspace(panel, scheme, shocks);
    return finish_estimate(w, spatial);
}

double sdpm_profile_log_likelihood(const Eigen::MatrixXd& panel, const WeightScheme& scheme,
                                   const Eigen::MatrixXd& shocks, double spatial) {
    SdpmWorkspace w = build_workspace(panel, scheme, shocks);
    return w.concentrated(spatial);
}

SdpmEstimate estimate_sdpm(const Eigen::MatrixXd& panel, const WeightScheme& scheme,
                           const Eigen::MatrixXd& shocks) {
    SdpmWorkspace w = build_workspace(panel, scheme, shocks);

    // The stable interval for a row-stochastic weight matrix is |p| < 1.
    constexpr double bound = 0.999;
    constexpr int grid_points = 41;
    int best = -1;
    double best_value = 0.0;
    for (int g = 0; g < grid_points; ++g) {
        double p = -bound + 2.0 * bound * g / (grid_points - 1);
        double value = w.concentrated(p);
        if (best < 0 || value > best_value) {
            best = g;
            best_value = value;
        }
    }
    if (best == 0 || best == grid_points - 1) {
        fail(Errc::non_concave_likelihood, "no interior optimum for the spatial coefficient");
    }

    // Golden-section refinement between the grid neighbours of the maximum.
    double lo = -bound + 2.0 * bound * (best - 1) / (grid_points - 1);
    double hi = -bound + 2.0 * bound * (best + 1) / (grid_points - 1);
    constexpr double golden = 0.3819660112501051;
    double a = lo + golden * (hi - lo);
    double b = hi - golden * (hi - lo);
    double fa = w.concentrated(a);
    double fb = w.concentrated(b);
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = hi - golden * (hi - lo);
            fb = w.concentrated(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = lo + golden * (hi - lo);
            fa = w.concentrated(a);
        }
    }
    double p_hat = 0.5 * (lo + hi);

    SdpmEstimate est = finish_estimate(w, p_hat);

    // Standard errors from the numerical Hessian of the profiled likelihood.
    Eigen::Vector4d phi = est.coefficients();
    Eigen::Matrix4d hessian;
    for (int i = 0; i < 4; ++i) {
        double hi_step = std::max(1e-5, 1e-4 * std::abs(phi(i)));
        for (int j = i; j < 4; ++j) {
            double hj_step = std::max(1e-5, 1e-4 * std::abs(phi(j)));
            auto shifted = [&](double di, double dj) {
                Eigen::Vector4d x = phi;
                x(i) += di;
                x(j) += dj;
                return w.profiled(x);
            };
            double value = (shifted(hi_step, hj_step) - shifted(hi_step, -hj_step) -
                            shifted(-hi_step, hj_step) + shifted(-hi_step, -hj_step)) /
                           (4.0 * hi_step * hj_step);
            hessian(i, j) = hessian(j, i) = value;
        }
    }
    Eigen::Matrix4d info = -hessian;
    Eigen::Matrix4d cov = info.ldlt().solve(Eigen::Matrix4d::Identity());
    for (int i = 0; i < 4; ++i) {
        est.std_errors[static_cast<std::size_t>(i)] = std::sqrt(std::max(cov(i, i), 0.0));
    }
    return est;
}

namespace {

/// Simulates one panel from the homogeneous spatial DGP, keeping the shock
/// series, fixed effects and the first observation at their sample values.
Eigen::MatrixXd simulate_sdpm_panel(const Eigen::Vector4d& phi, const Eigen::VectorXd& fixed,
                                    double sigma2, const Eigen::MatrixXd& panel,
                                    const WeightScheme& scheme, const Eigen::MatrixXd& shocks,
                                    Rng& rng) {
    Eigen::Index t_total = panel.rows();
    Eigen::Index n = panel.cols();
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n) - phi(0) * scheme.w;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(lhs);
    double sd = std::sqrt(std::max(sigma2, 0.0));

    Eigen::MatrixXd sim(t_total, n);
    sim.row(0) = panel.row(0);
    for (Eigen::Index t = 1; t < t_total; ++t) {
        Eigen::VectorXd prev = sim.row(t - 1).transpose();
        Eigen::VectorXd rhs = phi(1) * prev + phi(2) * (scheme.w * prev) +
                              phi(3) * shocks.row(t).transpose() + fixed;
        for (Eigen::Index i = 0; i < n; ++i) rhs(i) += sd * rng.normal();
        sim.row(t) = lu.solve(rhs).transpose();
    }
    return sim;
}

}  // namespace

SdpmEstimate bias_correct(const SdpmEstimate& estimate, const Eigen::MatrixXd& panel,
                          const WeightScheme& scheme, const Eigen::MatrixXd& shocks,
                          int iterations, const BiasCorrectConfig& config) {
    if (iterations < 0) fail(Errc::config_error, "negative iteration cap");
    if (iterations == 0) return estimate;
    if (config.sims_per_iteration < 1) fail(Errc::config_error, "need at least one simulation");

    Eigen::Vector4d uncorrected = estimate.coefficients();
    Eigen::Vector4d current = uncorrected;
    bool converged = false;
    int used = 0;
    std::uint64_t sim_counter = 0;

    for (int m = 0; m < iterations; ++m) {
        ++used;
        Eigen::Vector4d mean_estimate = Eigen::Vector4d::Zero();
        int successes = 0;
        for (int k = 0; k < config.sims_per_iteration; ++k) {
            Rng rng(derive_seed(config.seed, sim_counter++));
            Eigen::MatrixXd sim = simulate_sdpm_panel(current, estimate.fixed_effects,
                                                      estimate.sigma2, panel, scheme, shocks, rng);
            try {
                mean_estimate += estimate_sdpm(sim, scheme, shocks).coefficients();
                ++successes;
            } catch (const Error&) {
                // A pathological draw is skipped rather than poisoning the mean.
            }
        }
        if (successes == 0) fail(Errc::non_convergence, "every simulated panel failed to estimate");
        mean_estimate /= static_cast<double>(successes);

        Eigen::Vector4d bias = mean_estimate - current;
        Eigen::Vector4d next = uncorrected - bias;
        double change = (next - current).cwiseAbs().maxCoeff();
        current = next;
        if (change < config.tol) {
            converged = true;
            break;
        }
    }
    if (!converged && config.require_convergence) {
        fail(Errc::non_convergence, "bias correction did not reach a fixed point");
    }

    SdpmEstimate corrected = estimate;
    corrected.spatial = current(0);
    corrected.own_lag = current(1);
    corrected.spatial_lag = current(2);
    corrected.shock_impact = current(3);
    corrected.bias_corrected = true;
    corrected.bias_iterations = used;
    corrected.converged = converged;
    return corrected;
}

ArdlEstimate estimate_ardl_us(const Eigen::VectorXd& activity_levels,
                              const Eigen::VectorXd& national_shock, int lags) {
    Eigen::Index t_total = activity_levels.size();
    if (national_shock.size() != t_total) {
        fail(Errc::dimension_mismatch, "activity and shock series lengths differ");
    }
    if (lags < 0) fail(Errc::config_error, "negative lag order");
    Eigen::Index t_diff = t_total - 1;
    Eigen::Index t_eff = t_diff - lags;
    Eigen::Index k = lags + 2;
    if (t_eff < k + 6) fail(Errc::sample_too_short, "effective sample too short");

    Eigen::VectorXd dy = activity_levels.tail(t_diff) - activity_levels.head(t_diff);

    Eigen::MatrixXd x(t_eff, k);
    Eigen::VectorXd yv(t_eff);
    for (Eigen::Index i = 0; i < t_eff; ++i) {
        Eigen::Index idx = lags + i;  // index into dy; dated month idx+1 on the level grid
        int col = 0;
        for (int l = 1; l <= lags; ++l) x(i, col++) = dy(idx - l);
        x(i, col++) = national_shock(idx + 1);
        x(i, col++) = 1.0;
        yv(i) = dy(idx);
    }
    OlsFit fit = ols(x, yv);

    ArdlEstimate est;
    est.own_lag = fit.coef.head(lags);
    est.own_lag_se = fit.std_errors.head(lags);
    est.shock_impact = fit.coef(lags);
    est.shock_se = fit.std_errors(lags);
    est.constant = fit.coef(lags + 1);
    est.constant_se = fit.std_errors(lags + 1);
    est.sigma2 = fit.sigma2;
    est.t_eff = fit.t_eff;
    return est;
}

ThetaSummary theta_summary(const std::vector<ArxEstimate>& estimates,
                           const std::vector<std::string>& labels) {
    if (estimates.size() < 2) fail(Errc::too_few_states, "need at least two estimates");
    if (labels.size() != estimates.size()) {
        fail(Errc::dimension_mismatch, "labels and estimates differ in length");
    }

    ThetaSummary summary;
    double total = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        double theta = estimates[i].shock;
        total += theta;
        if (i == 0 || theta < summary.min) {
            summary.min = theta;
            summary.argmin_state = labels[i];
        }
        if (i == 0 || theta > summary.max) {
            summary.max = theta;
            summary.argmax_state = labels[i];
        }
    }
    summary.mean = total / static_cast<double>(estimates.size());
    double ss = 0.0;
    for (const auto& est : estimates) {
        double d = est.shock - summary.mean;
        ss += d * d;
    }
    summary.std_dev = std::sqrt(ss / static_cast<double>(estimates.size() - 1));
    return summary;
}

}  // namespace gvarkit

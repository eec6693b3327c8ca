#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gvarkit/gvar.hpp"
#include "gvarkit/irf.hpp"
#include "gvarkit/synth.hpp"
#include "gvarkit/weights.hpp"

namespace testutil {

/// Scratch directory for file-based tests, cleaned on construction.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("gvarkit_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Brute-force bilateral trade weights: an independent double loop over the
/// raw entries, no shared code with the implementation.
inline Eigen::MatrixXd naive_trade_weights(const std::vector<gvarkit::TradeFlow>& flows,
                                           const std::vector<std::string>& labels) {
    auto n = static_cast<Eigen::Index>(labels.size());
    auto flow_value = [&](const std::string& from, const std::string& to) {
        double total = 0.0;
        for (const auto& f : flows) {
            if (f.origin == from && f.destination == to) total += f.value;
        }
        return total;
    };
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double denom = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            if (k == i) continue;
            denom += flow_value(labels[k], labels[i]) + flow_value(labels[i], labels[k]);
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            w(i, j) = (flow_value(labels[j], labels[i]) + flow_value(labels[i], labels[j])) / denom;
        }
    }
    return w;
}

/// Impulse responses by direct simulation: run the deterministic reduced-form
/// recursion twice (with and without the impulse) and difference the paths.
inline Eigen::MatrixXd simulation_difference_irf(const gvarkit::GvarSystem& system,
                                                 const Eigen::VectorXd& impulse, int horizon) {
    Eigen::Index n = system.size();
    int p = system.lag_order();
    int total = p + horizon + 1;

    auto run = [&](bool shocked) {
        Eigen::MatrixXd path = Eigen::MatrixXd::Zero(total, n);
        for (int t = p; t < total; ++t) {
            Eigen::VectorXd value = system.c;
            for (int l = 1; l <= p; ++l) {
                value += system.f[static_cast<std::size_t>(l - 1)] * path.row(t - l).transpose();
            }
            if (shocked && t == p) value += system.lambda * impulse;
            path.row(t) = value.transpose();
        }
        return path;
    };
    Eigen::MatrixXd diff = run(true) - run(false);
    return diff.bottomRows(horizon + 1);
}

/// Stationary covariance of the companion process by fixed-point iteration of
/// S -> A S A' + Q (discrete Lyapunov recursion).
inline Eigen::MatrixXd stationary_covariance(const gvarkit::GvarSystem& system, int iterations = 4000) {
    Eigen::Index n = system.size();
    int p = system.lag_order();
    Eigen::MatrixXd a = gvarkit::companion_matrix(system);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n * p, n * p);
    q.topLeftCorner(n, n) = system.sigma_eps;
    Eigen::MatrixXd s = q;
    for (int i = 0; i < iterations; ++i) {
        Eigen::MatrixXd next = a * s * a.transpose() + q;
        if ((next - s).cwiseAbs().maxCoeff() < 1e-14) return next.topLeftCorner(n, n);
        s = next;
    }
    return s.topLeftCorner(n, n);
}

/// A small random stable system drawn through the synthetic DGP machinery.
inline gvarkit::SimulatedGvar random_system(int units, int lags, std::uint64_t seed,
                                            int periods = 50) {
    gvarkit::DgpSpec spec;
    spec.units = units;
    spec.lags = lags;
    spec.periods = periods;
    spec.seed = seed;
    return gvarkit::simulate_gvar(spec);
}

}  // namespace testutil

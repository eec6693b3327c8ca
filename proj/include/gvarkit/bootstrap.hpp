#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gvarkit/gvar.hpp"
#include "gvarkit/irf.hpp"
#include "gvarkit/rng.hpp"

namespace gvarkit {

struct BootstrapConfig {
    int replications = 1000;
    std::vector<double> percentiles = {10.0, 90.0};  // each in (0,100), sorted
    std::uint64_t seed = 0;
    int horizon = 48;
    bool allow_unstable = false;
    double max_discard_fraction = 0.20;
    int threads = 0;  // 0 -> hardware concurrency
};

/// Draws whole cross-sectional residual rows i.i.d. with replacement, keeping
/// contemporaneous cross-unit dependence intact.
Eigen::MatrixXd resample_residuals(const Eigen::MatrixXd& residuals, Rng& rng);
Eigen::MatrixXd resample_residuals(const Eigen::MatrixXd& residuals, std::uint64_t seed);

/// Point impulse responses plus bootstrap mean and percentile bands on the
/// cumulated (level) scale.
struct BandedIrf {
    std::vector<double> percentiles;
    Eigen::MatrixXd point_cumulative;                 // (H+1) x N
    Eigen::MatrixXd mean_difference;                  // (H+1) x N
    Eigen::MatrixXd mean_cumulative;                  // (H+1) x N
    std::vector<Eigen::MatrixXd> band_cumulative;     // one (H+1) x N per percentile
    int kept = 0;
    int discarded = 0;

    struct RegionalBands {
        std::vector<ClimateRegion> regions;
        Eigen::MatrixXd mean;                     // (H+1) x #regions
        std::vector<Eigen::MatrixXd> band;        // per percentile
        Eigen::MatrixXd point;
    };
    std::optional<RegionalBands> regional;
};

/// Recursive-design residual bootstrap: each replication regenerates the
/// panel from the estimated reduced form with resampled residual rows (the
/// shock series stays fixed at its observed values), re-estimates every unit
/// equation, reassembles the system and recomputes the scenario responses.
/// Replications with an explosive reduced form are discarded; more than
/// `max_discard_fraction` discards is an error.
BandedIrf bootstrap_irf(const GvarFit& fit, const ShockScenario& scenario,
                        const BootstrapConfig& config, const RegionMap* region_map = nullptr);

/// Shared pass over several scenarios (one bootstrap, many responses).
std::vector<BandedIrf> bootstrap_irfs(const GvarFit& fit,
                                      const std::vector<ShockScenario>& scenarios,
                                      const BootstrapConfig& config,
                                      const RegionMap* region_map = nullptr);

/// Bootstrap bands for each state's own-shock response at one headline
/// horizon, with and without system feedback.
struct SecondRoundBands {
    std::vector<std::string> states;
    std::vector<double> percentiles;
    int horizon = 12;
    Eigen::VectorXd full_point, muted_point;
    Eigen::VectorXd full_mean, muted_mean;
    Eigen::MatrixXd full_band, muted_band;  // #states x #percentiles
    int kept = 0;
    int discarded = 0;
};

SecondRoundBands bootstrap_second_round(const GvarFit& fit, int horizon,
                                        const BootstrapConfig& config);

/// Low-level driver: runs the recursive bootstrap and maps every kept
/// replication through `evaluate` (which must be pure). Rows of the result
/// align with replication indices; `kept` flags discarded slots.
struct BootstrapPayloads {
    Eigen::MatrixXd rows;          // replications x payload size (discarded rows zero)
    std::vector<char> kept;        // per replication
    int discarded = 0;
};

using ReplicationEvaluator = std::function<Eigen::VectorXd(
    const GvarSystem& system, const std::vector<ArxEstimate>& estimates)>;

BootstrapPayloads bootstrap_payloads(const GvarFit& fit, const BootstrapConfig& config,
                                     Eigen::Index payload_size,
                                     const ReplicationEvaluator& evaluate);

/// Linearly interpolated empirical percentile (p in [0,100]).
double percentile(std::vector<double> values, double p);

}  // namespace gvarkit

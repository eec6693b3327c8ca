#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "gvarkit/gvar.hpp"
#include "gvarkit/ingest.hpp"

namespace gvarkit {

/// Shock intensities applied at horizon zero as a one-period impulse.
struct ShockScenario {
    Eigen::VectorXd intensity;  // length N, entries in [0,1]
};

/// Intensity on every member of `region`, zero elsewhere.
ShockScenario make_region_scenario(ClimateRegion region, const RegionMap& map,
                                   const std::vector<std::string>& labels,
                                   double intensity = 1.0);

ShockScenario make_single_state_scenario(const std::string& state,
                                         const std::vector<std::string>& labels,
                                         double intensity = 1.0);

/// Responses on the difference scale plus their running sums (level scale).
struct IrfResult {
    Eigen::MatrixXd difference;  // (H+1) x N
    Eigen::MatrixXd cumulative;  // (H+1) x N

    int horizons() const { return static_cast<int>(difference.rows()) - 1; }
};

/// Impulse responses of the reduced form to a one-period shock impulse:
/// r_0 = Lambda s, r_h = sum_l F_l r_{h-l}.
IrfResult compute_irf(const GvarSystem& system, const ShockScenario& scenario, int horizon);

struct RegionalIrf {
    std::vector<ClimateRegion> regions;
    Eigen::MatrixXd values;  // (H+1) x #regions
};

/// Weighted mean of member-state responses per horizon. With no weight
/// vector, members average uniformly.
RegionalIrf aggregate_to_regions(const Eigen::MatrixXd& responses, const RegionMap& map,
                                 const std::vector<std::string>& labels,
                                 const std::optional<Eigen::VectorXd>& weights = std::nullopt);

/// Own-state response with and without the rest of the system reacting. The
/// muted path runs the state's own equation alone, holding the rest-of-system
/// average at baseline; the difference of the cumulated paths is the
/// feedback (second-round) effect.
struct SecondRoundResult {
    Eigen::Index state_index = 0;
    Eigen::VectorXd full_difference;   // H+1
    Eigen::VectorXd full_cumulative;   // H+1
    Eigen::VectorXd muted_difference;  // H+1
    Eigen::VectorXd muted_cumulative;  // H+1

    double second_round_at(int h) const { return full_cumulative(h) - muted_cumulative(h); }
};

SecondRoundResult second_round(const GvarSystem& system, const std::vector<ArxEstimate>& estimates,
                               const ShockScenario& scenario, int horizon);

}  // namespace gvarkit

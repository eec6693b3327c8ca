#include "gvarkit/irf.hpp"

#include "gvarkit/error.hpp"

namespace gvarkit {

ShockScenario make_region_scenario(ClimateRegion region, const RegionMap& map,
                                   const std::vector<std::string>& labels, double intensity) {
    if (region == ClimateRegion::unassigned) {
        fail(Errc::unknown_region, "cannot build a scenario for the unassigned bucket");
    }
    ShockScenario scenario;
    scenario.intensity = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(labels.size()));
    bool any = false;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (map.region_of(labels[i]) == region) {
            scenario.intensity(static_cast<Eigen::Index>(i)) = intensity;
            any = true;
        }
    }
    if (!any) fail(Errc::empty_region, std::string("region ") + to_string(region) + " has no members");
    return scenario;
}

ShockScenario make_single_state_scenario(const std::string& state,
                                         const std::vector<std::string>& labels,
                                         double intensity) {
    ShockScenario scenario;
    scenario.intensity = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == state) {
            scenario.intensity(static_cast<Eigen::Index>(i)) = intensity;
            return scenario;
        }
    }
    fail(Errc::unknown_label, "state '" + state + "' not among the unit labels");
}

IrfResult compute_irf(const GvarSystem& system, const ShockScenario& scenario, int horizon) {
    Eigen::Index n = system.size();
    if (scenario.intensity.size() != n) {
        fail(Errc::dimension_mismatch, "scenario length does not match the system");
    }
    if (horizon < 0) fail(Errc::config_error, "horizon must be non-negative");
    int p = system.lag_order();

    IrfResult result;
    result.difference.resize(horizon + 1, n);
    result.cumulative.resize(horizon + 1, n);
    result.difference.row(0) = (system.lambda * scenario.intensity).transpose();
    for (int h = 1; h <= horizon; ++h) {
        Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(n);
        for (int l = 1; l <= std::min(h, p); ++l) {
            r += result.difference.row(h - l) * system.f[static_cast<std::size_t>(l - 1)].transpose();
        }
        result.difference.row(h) = r;
    }
    result.cumulative.row(0) = result.difference.row(0);
    for (int h = 1; h <= horizon; ++h) {
        result.cumulative.row(h) = result.cumulative.row(h - 1) + result.difference.row(h);
    }
    return result;
}

RegionalIrf aggregate_to_regions(const Eigen::MatrixXd& responses, const RegionMap& map,
                                 const std::vector<std::string>& labels,
                                 const std::optional<Eigen::VectorXd>& weights) {
    if (responses.cols() != static_cast<Eigen::Index>(labels.size())) {
        fail(Errc::dimension_mismatch, "response columns do not match labels");
    }
    if (weights && weights->size() != responses.cols()) {
        fail(Errc::weight_mismatch, "aggregation weight vector length differs from labels");
    }

    RegionalIrf out;
    for (ClimateRegion region : all_regions()) {
        std::vector<Eigen::Index> members;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (map.region_of(labels[i]) == region) {
                members.push_back(static_cast<Eigen::Index>(i));
            }
        }
        if (members.empty()) continue;
        out.regions.push_back(region);
    }
    if (out.regions.empty()) fail(Errc::empty_region, "region map assigns no units");

    out.values.resize(responses.rows(), static_cast<Eigen::Index>(out.regions.size()));
    for (std::size_t r = 0; r < out.regions.size(); ++r) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(responses.rows());
        double total_weight = 0.0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (map.region_of(labels[i]) != out.regions[r]) continue;
            double wi = weights ? (*weights)(static_cast<Eigen::Index>(i)) : 1.0;
            acc += wi * responses.col(static_cast<Eigen::Index>(i));
            total_weight += wi;
        }
        if (total_weight <= 0.0) {
            fail(Errc::weight_mismatch,
                 std::string("region ") + to_string(out.regions[r]) + " has zero total weight");
        }
        out.values.col(static_cast<Eigen::Index>(r)) = acc / total_weight;
    }
    return out;
}

SecondRoundResult second_round(const GvarSystem& system, const std::vector<ArxEstimate>& estimates,
                               const ShockScenario& scenario, int horizon) {
    Eigen::Index n = system.size();
    if (scenario.intensity.size() != n ||
        static_cast<Eigen::Index>(estimates.size()) != n) {
        fail(Errc::dimension_mismatch, "scenario or estimates do not match the system");
    }
    Eigen::Index hit = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (scenario.intensity(i) != 0.0) {
            if (hit >= 0) fail(Errc::multi_state_scenario, "scenario must hit exactly one state");
            hit = i;
        }
    }
    if (hit < 0) fail(Errc::multi_state_scenario, "scenario hits no state");

    SecondRoundResult result;
    result.state_index = hit;

    IrfResult full = compute_irf(system, scenario, horizon);
    result.full_difference = full.difference.col(hit);
    result.full_cumulative = full.cumulative.col(hit);

    // Muted path: the state's own equation with the rest of the system frozen
    // at baseline, so only own lags propagate the impulse.
    const ArxEstimate& est = estimates[static_cast<std::size_t>(hit)];
    result.muted_difference = Eigen::VectorXd::Zero(horizon + 1);
    result.muted_difference(0) = est.shock * scenario.intensity(hit);
    for (int h = 1; h <= horizon; ++h) {
        double value = 0.0;
        for (int l = 1; l <= std::min(h, est.spec.own_lags); ++l) {
            value += est.own_lag(l - 1) * result.muted_difference(h - l);
        }
        result.muted_difference(h) = value;
    }
    result.muted_cumulative = result.muted_difference;
    for (int h = 1; h <= horizon; ++h) {
        result.muted_cumulative(h) += result.muted_cumulative(h - 1);
    }
    return result;
}

}  // namespace gvarkit

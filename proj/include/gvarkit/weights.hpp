#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gvarkit/ingest.hpp"

namespace gvarkit {

/// Cross-unit weight matrix: non-negative, zero diagonal, rows sum to one.
struct WeightScheme {
    std::vector<std::string> labels;
    Eigen::MatrixXd w;  // N x N

    Eigen::Index size() const { return w.rows(); }
    Eigen::Index index_of(const std::string& label) const;  // Errc::unknown_label
};

/// Checks the row-stochastic invariants; throws on violation.
void validate_weights(const WeightScheme& scheme, double tol = 1e-12);

/// w_ij proportional to the bilateral flow total between i and j (imports
/// plus exports), normalised by unit i's total trade. Entries referencing
/// states outside `labels` are ignored; self-flows never enter.
WeightScheme trade_weights(const TradeFlowTable& table, const std::vector<std::string>& labels);

/// Equal weight on each neighbour. Units without neighbours take weight one
/// on their configured fallback partner, or raise IsolatedUnit.
WeightScheme adjacency_weights(const std::vector<std::pair<std::string, std::string>>& borders,
                               const std::vector<std::string>& labels,
                               const std::map<std::string, std::string>& island_fallback = {});

/// Two-row selector for unit i: row 0 picks the unit's own value, row 1 the
/// weighted rest-of-system average.
struct LinkMatrix {
    Eigen::Matrix<double, 2, Eigen::Dynamic> m;

    Eigen::Vector2d apply(const Eigen::VectorXd& y) const { return m * y; }
};

LinkMatrix link_matrix(const WeightScheme& scheme, Eigen::Index unit);

void write_weight_matrix(const std::filesystem::path& path, const WeightScheme& scheme,
                         const std::string& comment = "");
WeightScheme read_weight_matrix(const std::filesystem::path& path);

/// Whether the nonzero pattern of w, taken as an undirected graph, is
/// connected.
bool is_connected(const WeightScheme& scheme);

}  // namespace gvarkit

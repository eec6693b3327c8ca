#include "gvarkit/weights.hpp"

#include <cmath>
#include <set>

#include "gvarkit/error.hpp"

namespace gvarkit {

Eigen::Index WeightScheme::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return static_cast<Eigen::Index>(i);
    }
    fail(Errc::unknown_label, "no unit labelled '" + label + "'");
}

void validate_weights(const WeightScheme& scheme, double tol) {
    Eigen::Index n = scheme.size();
    if (n != scheme.w.cols() || n != static_cast<Eigen::Index>(scheme.labels.size())) {
        fail(Errc::dimension_mismatch, "weight matrix shape does not match labels");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (scheme.w(i, i) != 0.0) fail(Errc::config_error, "nonzero diagonal weight");
        double row_sum = scheme.w.row(i).sum();
        if (std::abs(row_sum - 1.0) > tol) {
            fail(Errc::isolated_unit, "row " + scheme.labels[i] + " sums to " +
                                          format_double(row_sum) + ", expected 1");
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            if (scheme.w(i, j) < 0.0) fail(Errc::negative_value, "negative weight");
        }
    }
}

WeightScheme trade_weights(const TradeFlowTable& table, const std::vector<std::string>& labels) {
    Eigen::Index n = static_cast<Eigen::Index>(labels.size());
    std::map<std::string, Eigen::Index> index;
    for (Eigen::Index i = 0; i < n; ++i) index[labels[i]] = i;

    // Bilateral totals: flows i->j and j->i both credit the (i,j) pair.
    Eigen::MatrixXd bilateral = Eigen::MatrixXd::Zero(n, n);
    for (const auto& flow : table.entries) {
        auto o = index.find(flow.origin);
        auto d = index.find(flow.destination);
        if (o == index.end() || d == index.end()) continue;
        if (o->second == d->second) continue;
        bilateral(o->second, d->second) += flow.value;
        bilateral(d->second, o->second) += flow.value;
    }

    WeightScheme scheme;
    scheme.labels = labels;
    scheme.w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double total = bilateral.row(i).sum();
        if (total <= 0.0) {
            fail(Errc::isolated_unit, labels[i] + " has no bilateral trade");
        }
        scheme.w.row(i) = bilateral.row(i) / total;
        scheme.w(i, i) = 0.0;
    }
    return scheme;
}

WeightScheme adjacency_weights(const std::vector<std::pair<std::string, std::string>>& borders,
                               const std::vector<std::string>& labels,
                               const std::map<std::string, std::string>& island_fallback) {
    Eigen::Index n = static_cast<Eigen::Index>(labels.size());
    std::map<std::string, Eigen::Index> index;
    for (Eigen::Index i = 0; i < n; ++i) index[labels[i]] = i;

    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [a, b] : borders) {
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end() || ib == index.end()) continue;
        if (ia->second == ib->second) continue;
        adj(ia->second, ib->second) = 1.0;
        adj(ib->second, ia->second) = 1.0;
    }

    WeightScheme scheme;
    scheme.labels = labels;
    scheme.w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double degree = adj.row(i).sum();
        if (degree > 0.0) {
            scheme.w.row(i) = adj.row(i) / degree;
            continue;
        }
        auto fb = island_fallback.find(labels[i]);
        if (fb == island_fallback.end()) {
            fail(Errc::isolated_unit, labels[i] + " has no neighbours and no fallback partner");
        }
        auto partner = index.find(fb->second);
        if (partner == index.end() || partner->second == i) {
            fail(Errc::unknown_label, "fallback partner '" + fb->second + "' for " + labels[i]);
        }
        scheme.w(i, partner->second) = 1.0;
    }
    return scheme;
}

LinkMatrix link_matrix(const WeightScheme& scheme, Eigen::Index unit) {
    if (unit < 0 || unit >= scheme.size()) {
        fail(Errc::index_out_of_range, "unit index " + std::to_string(unit));
    }
    LinkMatrix link;
    link.m = Eigen::Matrix<double, 2, Eigen::Dynamic>::Zero(2, scheme.size());
    link.m(0, unit) = 1.0;
    link.m.row(1) = scheme.w.row(unit);
    return link;
}

void write_weight_matrix(const std::filesystem::path& path, const WeightScheme& scheme,
                         const std::string& comment) {
    CsvTable table;
    table.header.push_back("unit");
    for (const auto& label : scheme.labels) table.header.push_back(label);
    for (Eigen::Index i = 0; i < scheme.size(); ++i) {
        std::vector<std::string> row;
        row.push_back(scheme.labels[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < scheme.size(); ++j) {
            row.push_back(format_double(scheme.w(i, j)));
        }
        table.rows.push_back(std::move(row));
    }
    write_delimited(path, table, ',', comment);
}

WeightScheme read_weight_matrix(const std::filesystem::path& path) {
    CsvTable table = read_delimited(path);
    WeightScheme scheme;
    for (std::size_t c = 1; c < table.header.size(); ++c) scheme.labels.push_back(table.header[c]);
    Eigen::Index n = static_cast<Eigen::Index>(scheme.labels.size());
    if (static_cast<Eigen::Index>(table.rows.size()) != n) {
        fail(Errc::dimension_mismatch, "weight matrix must be square");
    }
    scheme.w.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = table.rows[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(row.size()) != n + 1 ||
            row[0] != scheme.labels[static_cast<std::size_t>(i)]) {
            fail(Errc::dimension_mismatch, "weight matrix rows must mirror the header order");
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            scheme.w(i, j) = parse_double(row[static_cast<std::size_t>(j) + 1]);
        }
    }
    return scheme;
}

bool is_connected(const WeightScheme& scheme) {
    Eigen::Index n = scheme.size();
    if (n == 0) return true;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<Eigen::Index> stack = {0};
    seen[0] = true;
    while (!stack.empty()) {
        Eigen::Index i = stack.back();
        stack.pop_back();
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!seen[static_cast<std::size_t>(j)] &&
                (scheme.w(i, j) != 0.0 || scheme.w(j, i) != 0.0)) {
                seen[static_cast<std::size_t>(j)] = true;
                stack.push_back(j);
            }
        }
    }
    for (bool s : seen) {
        if (!s) return false;
    }
    return true;
}

}  // namespace gvarkit

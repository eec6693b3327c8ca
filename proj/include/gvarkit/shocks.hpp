#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gvarkit/calendar.hpp"
#include "gvarkit/ingest.hpp"

namespace gvarkit {

struct StateMeta {
    std::string state;
    int counties = 0;  // counties or county equivalents, >= 1
};

/// The built-in 50-state metadata (3142 counties in total).
std::vector<StateMeta> built_in_state_meta();

/// State-by-month shock intensities. s(t,i) is the share of state i's
/// counties under a weather-related declaration beginning in month t, in
/// [0,1]; national(t) is the corresponding country-wide county share.
struct ShockPanel {
    YearMonth start;
    std::vector<std::string> states;
    Eigen::MatrixXd s;          // T x N
    Eigen::VectorXd national;   // T
    Eigen::MatrixXi hit;        // T x N distinct counties hit
    Eigen::MatrixXi emergency;  // T x N, 1 iff hit > 0

    Eigen::Index periods() const { return s.rows(); }
    Eigen::Index size() const { return s.cols(); }
    YearMonth month_at(Eigen::Index t) const { return add_months(start, static_cast<int>(t)); }
};

/// Builds the state-level shock panel from declaration records. A declaration
/// contributes to the month of its begin date. Within a state-month, county
/// hits are deduplicated when county lists exist; bare integer counts are
/// summed. The total is capped at the state's county count, so s stays in
/// [0,1]. Only declarations whose incident type falls in `filter` count.
ShockPanel build_state_shocks(const std::vector<DeclarationRecord>& records,
                              const std::vector<StateMeta>& meta,
                              const std::set<EventGroup>& filter,
                              const IncidentTaxonomy& taxonomy, YearMonth window_start,
                              YearMonth window_end);

/// National series: counties hit across all states as a share of the total
/// county count.
Eigen::VectorXd build_national_shock(const ShockPanel& panel, const std::vector<StateMeta>& meta);

enum class Season { DJF, MAM, JJA, SON };

const char* to_string(Season season);
Season season_of_month(int month);

struct DeclarationSummary {
    std::map<EventGroup, int> by_group;                          // weather groups only
    std::map<Season, int> by_season;
    std::map<std::string, std::map<EventGroup, int>> by_state_group;
    int total_weather = 0;
    int total_non_weather = 0;
};

DeclarationSummary summarize_declarations(const std::vector<DeclarationRecord>& records,
                                          const IncidentTaxonomy& taxonomy);

void write_shock_panel(const std::filesystem::path& path, const ShockPanel& panel,
                       const std::string& comment = "");
void write_national_shock(const std::filesystem::path& path, const ShockPanel& panel,
                          const std::string& comment = "");

/// Reads a long-format (date,state,s) shock panel back; hit counts are
/// recovered from the intensities via the state metadata.
ShockPanel read_shock_panel(const std::filesystem::path& path, const std::vector<StateMeta>& meta);

}  // namespace gvarkit

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gvarkit {

/// The 50 two-letter state codes in lexicographic order.
const std::vector<std::string>& default_state_universe();

/// Counties (or county equivalents) per state; totals 3142 across the
/// 50-state universe.
const std::map<std::string, int>& default_state_counties();

/// NOAA nine-region climate classification of the contiguous states.
/// AK and HI are deliberately absent (unassigned).
const std::map<std::string, std::string>& default_region_assignment();

/// Land borders between contiguous states, as unordered pairs. Corner-only
/// contacts (AZ-CO, NM-UT) are not treated as borders.
const std::vector<std::pair<std::string, std::string>>& default_state_borders();

/// Raw incident-type label -> event-group name. Labels not present map to
/// "non_weather".
const std::map<std::string, std::string>& default_incident_taxonomy();

}  // namespace gvarkit

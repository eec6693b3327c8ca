#include "gvarkit/us_defaults.hpp"

namespace gvarkit {

const std::vector<std::string>& default_state_universe() {
    static const std::vector<std::string> states = {
        "AK", "AL", "AR", "AZ", "CA", "CO", "CT", "DE", "FL", "GA", "HI", "IA", "ID",
        "IL", "IN", "KS", "KY", "LA", "MA", "MD", "ME", "MI", "MN", "MO", "MS", "MT",
        "NC", "ND", "NE", "NH", "NJ", "NM", "NV", "NY", "OH", "OK", "OR", "PA", "RI",
        "SC", "SD", "TN", "TX", "UT", "VA", "VT", "WA", "WI", "WV", "WY"};
    return states;
}

const std::map<std::string, int>& default_state_counties() {
    // County and county-equivalent counts; the 50-state total is 3142.
    static const std::map<std::string, int> counts = {
        {"AK", 30},  {"AL", 67},  {"AR", 75},  {"AZ", 15},  {"CA", 58},  {"CO", 64},
        {"CT", 8},   {"DE", 3},   {"FL", 67},  {"GA", 159}, {"HI", 5},   {"IA", 99},
        {"ID", 44},  {"IL", 102}, {"IN", 92},  {"KS", 105}, {"KY", 120}, {"LA", 64},
        {"MA", 14},  {"MD", 24},  {"ME", 16},  {"MI", 83},  {"MN", 87},  {"MO", 115},
        {"MS", 82},  {"MT", 56},  {"NC", 100}, {"ND", 53},  {"NE", 93},  {"NH", 10},
        {"NJ", 21},  {"NM", 33},  {"NV", 17},  {"NY", 62},  {"OH", 88},  {"OK", 77},
        {"OR", 36},  {"PA", 67},  {"RI", 5},   {"SC", 46},  {"SD", 66},  {"TN", 95},
        {"TX", 254}, {"UT", 29},  {"VA", 133}, {"VT", 14},  {"WA", 39},  {"WI", 72},
        {"WV", 55},  {"WY", 23}};
    return counts;
}

const std::map<std::string, std::string>& default_region_assignment() {
    static const std::map<std::string, std::string> regions = {
        // Northeast
        {"CT", "NE"}, {"DE", "NE"}, {"MA", "NE"}, {"MD", "NE"}, {"ME", "NE"},
        {"NH", "NE"}, {"NJ", "NE"}, {"NY", "NE"}, {"PA", "NE"}, {"RI", "NE"},
        {"VT", "NE"},
        // Southeast
        {"AL", "SE"}, {"FL", "SE"}, {"GA", "SE"}, {"NC", "SE"}, {"SC", "SE"},
        {"VA", "SE"},
        // South
        {"AR", "S"}, {"KS", "S"}, {"LA", "S"}, {"MS", "S"}, {"OK", "S"}, {"TX", "S"},
        // Upper Midwest
        {"IA", "UMW"}, {"MI", "UMW"}, {"MN", "UMW"}, {"WI", "UMW"},
        // Ohio Valley
        {"IL", "OV"}, {"IN", "OV"}, {"KY", "OV"}, {"MO", "OV"}, {"OH", "OV"},
        {"TN", "OV"}, {"WV", "OV"},
        // Northern Rockies and Plains
        {"MT", "NP"}, {"ND", "NP"}, {"NE", "NP"}, {"SD", "NP"}, {"WY", "NP"},
        // Southwest
        {"AZ", "SW"}, {"CO", "SW"}, {"NM", "SW"}, {"UT", "SW"},
        // West
        {"CA", "W"}, {"NV", "W"},
        // Northwest
        {"ID", "NW"}, {"OR", "NW"}, {"WA", "NW"}};
    return regions;
}

const std::vector<std::pair<std::string, std::string>>& default_state_borders() {
    static const std::vector<std::pair<std::string, std::string>> borders = {
        {"AL", "FL"}, {"AL", "GA"}, {"AL", "MS"}, {"AL", "TN"}, {"AR", "LA"},
        {"AR", "MO"}, {"AR", "MS"}, {"AR", "OK"}, {"AR", "TN"}, {"AR", "TX"},
        {"AZ", "CA"}, {"AZ", "NM"}, {"AZ", "NV"}, {"AZ", "UT"}, {"CA", "NV"},
        {"CA", "OR"}, {"CO", "KS"}, {"CO", "NE"}, {"CO", "NM"}, {"CO", "OK"},
        {"CO", "UT"}, {"CO", "WY"}, {"CT", "MA"}, {"CT", "NY"}, {"CT", "RI"},
        {"DE", "MD"}, {"DE", "NJ"}, {"DE", "PA"}, {"FL", "GA"}, {"GA", "NC"},
        {"GA", "SC"}, {"GA", "TN"}, {"IA", "IL"}, {"IA", "MN"}, {"IA", "MO"},
        {"IA", "NE"}, {"IA", "SD"}, {"IA", "WI"}, {"ID", "MT"}, {"ID", "NV"},
        {"ID", "OR"}, {"ID", "UT"}, {"ID", "WA"}, {"ID", "WY"}, {"IL", "IN"},
        {"IL", "KY"}, {"IL", "MO"}, {"IL", "WI"}, {"IN", "KY"}, {"IN", "MI"},
        {"IN", "OH"}, {"KS", "MO"}, {"KS", "NE"}, {"KS", "OK"}, {"KY", "MO"},
        {"KY", "OH"}, {"KY", "TN"}, {"KY", "VA"}, {"KY", "WV"}, {"LA", "MS"},
        {"LA", "TX"}, {"MA", "NH"}, {"MA", "NY"}, {"MA", "RI"}, {"MA", "VT"},
        {"MD", "PA"}, {"MD", "VA"}, {"MD", "WV"}, {"ME", "NH"}, {"MI", "OH"},
        {"MI", "WI"}, {"MN", "ND"}, {"MN", "SD"}, {"MN", "WI"}, {"MO", "NE"},
        {"MO", "OK"}, {"MO", "TN"}, {"MS", "TN"}, {"MT", "ND"}, {"MT", "SD"},
        {"MT", "WY"}, {"NC", "SC"}, {"NC", "TN"}, {"NC", "VA"}, {"ND", "SD"},
        {"NE", "SD"}, {"NE", "WY"}, {"NH", "VT"}, {"NJ", "NY"}, {"NJ", "PA"},
        {"NM", "OK"}, {"NM", "TX"}, {"NV", "OR"}, {"NV", "UT"}, {"NY", "PA"},
        {"NY", "VT"}, {"OH", "PA"}, {"OH", "WV"}, {"OK", "TX"}, {"OR", "WA"},
        {"PA", "WV"}, {"SD", "WY"}, {"TN", "VA"}, {"UT", "WY"}, {"VA", "WV"}};
    return borders;
}

const std::map<std::string, std::string>& default_incident_taxonomy() {
    static const std::map<std::string, std::string> taxonomy = {
        {"Winter Storm", "winter"},
        {"Severe Ice Storm", "winter"},
        {"Ice Storm", "winter"},
        {"Snowstorm", "winter"},
        {"Snow", "winter"},
        {"Blizzard", "winter"},
        {"Freezing", "winter"},
        {"Winter Weather", "winter"},
        {"Hurricane", "tropical_storm"},
        {"Typhoon", "tropical_storm"},
        {"Tornado", "tropical_storm"},
        {"Tropical Storm", "tropical_storm"},
        {"Tropical Depression", "tropical_storm"},
        {"Severe Storm", "storm"},
        {"Severe Storm(s)", "storm"},
        {"Severe Storms", "storm"},
        {"Coastal Storm", "storm"},
        {"Storm", "storm"},
        {"Straight-Line Winds", "storm"},
        {"Fire", "fire"},
        {"Flood", "flood"},
        {"Drought", "drought"}};
    return taxonomy;
}

}  // namespace gvarkit

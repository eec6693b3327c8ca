#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gvarkit {

/// In-memory delimited table: one header row plus data rows. Lines starting
/// with '#' and blank lines are skipped on read, so outputs may carry a
/// manifest reference as a leading comment.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a required column; throws Errc::missing_column.
    std::size_t column(const std::string& name) const;
    std::optional<std::size_t> find_column(const std::string& name) const;
};

CsvTable parse_delimited(std::string_view text, char delimiter = ',');
CsvTable read_delimited(const std::filesystem::path& path, char delimiter = ',');

std::string format_delimited(const CsvTable& table, char delimiter = ',');
void write_delimited(const std::filesystem::path& path, const CsvTable& table,
                     char delimiter = ',', const std::string& comment = "");

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);  // Errc::malformed on failure

}  // namespace gvarkit

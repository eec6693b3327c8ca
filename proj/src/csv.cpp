#include "gvarkit/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "gvarkit/error.hpp"

namespace gvarkit {

namespace {

// Splits one logical record; `pos` advances past the record's final newline.
// Quoted fields may contain the delimiter, doubled quotes, and newlines.
std::vector<std::string> split_record(std::string_view text, std::size_t& pos, char delim) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    while (pos < text.size()) {
        char c = text[pos];
        if (quoted) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field += '"';
                    ++pos;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == delim) {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            ++pos;
            break;
        } else if (c != '\r') {
            field += c;
        }
        ++pos;
    }
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
    if (auto idx = find_column(name)) return *idx;
    fail(Errc::missing_column, "column '" + name + "' not found in header");
}

std::optional<std::size_t> CsvTable::find_column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return std::nullopt;
}

CsvTable parse_delimited(std::string_view text, char delimiter) {
    CsvTable table;
    std::size_t pos = 0;
    while (pos < text.size()) {
        // Skip blank and comment lines outside of records.
        if (text[pos] == '\n' || text[pos] == '\r') {
            ++pos;
            continue;
        }
        if (text[pos] == '#') {
            while (pos < text.size() && text[pos] != '\n') ++pos;
            continue;
        }
        auto fields = split_record(text, pos, delimiter);
        if (table.header.empty()) {
            table.header = std::move(fields);
        } else {
            table.rows.push_back(std::move(fields));
        }
    }
    if (table.header.empty()) fail(Errc::empty_file, "no header row found");
    return table;
}

CsvTable read_delimited(const std::filesystem::path& path, char delimiter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::input_missing, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        fail(Errc::empty_file, path.string() + " is empty");
    }
    return parse_delimited(text, delimiter);
}

namespace {

void append_field(std::string& out, const std::string& field, char delim) {
    bool needs_quote = field.find_first_of({delim, '"', '\n', '\r'}) != std::string::npos;
    if (!needs_quote) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

void append_row(std::string& out, const std::vector<std::string>& row, char delim) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += delim;
        append_field(out, row[i], delim);
    }
    out += '\n';
}

}  // namespace

std::string format_delimited(const CsvTable& table, char delimiter) {
    std::string out;
    append_row(out, table.header, delimiter);
    for (const auto& row : table.rows) append_row(out, row, delimiter);
    return out;
}

void write_delimited(const std::filesystem::path& path, const CsvTable& table, char delimiter,
                     const std::string& comment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::input_missing, "cannot write " + path.string());
    if (!comment.empty()) out << "# " << comment << "\n";
    out << format_delimited(table, delimiter);
}

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        fail(Errc::malformed_value, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace gvarkit

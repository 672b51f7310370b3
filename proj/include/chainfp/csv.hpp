#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace chainfp::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by header name, -1 if absent.
    int column(const std::string& name) const;
};

/// Reads a comma-separated file with a mandatory header row. Fields are
/// split on ',' verbatim (the dataset schemas contain no quoting or
/// embedded separators); trailing '\r' is stripped. Throws SchemaError on
/// missing file, empty file, or ragged rows.
Table read_file(const std::filesystem::path& path);

/// Parses with SchemaError on failure; `context` names the offending cell.
double to_double(const std::string& field, const std::string& context);
long long to_int(const std::string& field, const std::string& context);

/// Writes header + rows, LF line endings.
void write_file(const std::filesystem::path& path, const Table& table);

}  // namespace chainfp::csv

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace tricomi::io {

/// Ordered key/value lines written as "# key: value" at the top of every
/// output file. The first line is always the tool name and version.
class Header {
public:
    Header();

    Header& add(const std::string& key, const std::string& value);
    Header& add(const std::string& key, double value);
    Header& add(const std::string& key, long value);
    Header& add(const std::string& key, int value) { return add(key, static_cast<long>(value)); }
    Header& append(const Header& other);

    /// Adds a "generated" line with the current UTC time; only used with --stamp.
    Header& stamp();

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    void write(std::ostream& os) const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Shortest round-trip decimal form (%.17g).
std::string format(double v);

/// Opens path for writing, creating parent directories. Throws IoError.
std::ofstream open_output(const std::filesystem::path& path);

/// Parses "# key: value" header lines from an existing output file.
std::vector<std::pair<std::string, std::string>> read_header(const std::filesystem::path& path);

/// Reads the numeric body of a CSV written by this tool: skips "#" lines,
/// takes the first remaining line as column names. Throws IoError.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;
};
Table read_table(const std::filesystem::path& path);

}  // namespace tricomi::io

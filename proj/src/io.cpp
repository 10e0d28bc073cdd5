#include "tricomi/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "tricomi/errors.hpp"

namespace tricomi::io {

Header::Header() { entries_.emplace_back("tool", std::string("tricomi-lab ") + TRICOMI_LAB_VERSION); }

Header& Header::add(const std::string& key, const std::string& value) {
    entries_.emplace_back(key, value);
    return *this;
}

Header& Header::add(const std::string& key, double value) { return add(key, format(value)); }

Header& Header::add(const std::string& key, long value) { return add(key, std::to_string(value)); }

Header& Header::append(const Header& other) {
    // Skip the other header's tool line; ours already carries it.
    for (std::size_t i = 1; i < other.entries_.size(); ++i) entries_.push_back(other.entries_[i]);
    return *this;
}

Header& Header::stamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return add("generated", std::string(buf));
}

void Header::write(std::ostream& os) const {
    for (const auto& [k, v] : entries_) os << "# " << k << ": " << v << '\n';
}

std::string format(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create output directory", path.parent_path().string());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file", path.string());
    return out;
}

std::vector<std::pair<std::string, std::string>> read_header(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open", path.string());
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    while (std::getline(in, line) && line.rfind("# ", 0) == 0) {
        const auto colon = line.find(": ");
        if (colon == std::string::npos) continue;
        out.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
    }
    return out;
}

int Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return static_cast<int>(i);
    }
    return -1;
}

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open", path.string());
    Table table;
    std::string line;
    bool have_columns = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        if (!have_columns) {
            while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
            have_columns = true;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                row.push_back(std::nan(""));
            }
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_columns) throw IoError("no column header in", path.string());
    return table;
}

}  // namespace tricomi::io

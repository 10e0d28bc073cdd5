#include "tricomi/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tricomi/errors.hpp"

namespace tricomi::config {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw std::invalid_argument("'" + t + "' is not a number");
    }
    if (!std::isfinite(v)) throw std::invalid_argument("'" + t + "' is not finite");
    return v;
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& key, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                         (key.empty() ? std::string() : ": key '" + key + "'") + ": " + message),
      line_(line),
      key_(key) {}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(to_double(cell));
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

File File::parse(std::istream& in, const std::string& source) {
    File f;
    f.source_ = source;
    std::string line, section;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string raw = line;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        f.echo_.push_back(trim(raw));
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError(source, number, "", "malformed section header '" + line + "'");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(source, number, "", "expected 'key = value', got '" + line + "'");
        Entry e;
        e.section = section;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        e.line = number;
        e.raw = trim(raw);
        const std::string name = section.empty() ? e.key : section + "." + e.key;
        if (e.key.empty()) throw ConfigError(source, number, "", "missing key before '='");
        if (e.value.empty()) throw ConfigError(source, number, name, "missing value");
        if (f.find(name)) throw ConfigError(source, number, name, "duplicate key");
        f.entries_.push_back(std::move(e));
    }
    return f;
}

File File::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), 0, "", "cannot open config file");
    return parse(in, path.string());
}

std::vector<std::string> File::echo() const { return echo_; }

Entry* File::find(const std::string& name) {
    for (auto& e : entries_) {
        if ((e.section.empty() ? e.key : e.section + "." + e.key) == name) return &e;
    }
    return nullptr;
}

const Entry* File::find(const std::string& name) const { return const_cast<File*>(this)->find(name); }

bool File::has(const std::string& name) const { return find(name) != nullptr; }

std::string File::get_string(const std::string& name, const std::string& fallback) {
    Entry* e = find(name);
    if (!e) return fallback;
    e->used = true;
    return e->value;
}

double File::get_double(const std::string& name, double fallback) {
    Entry* e = find(name);
    if (!e) return fallback;
    e->used = true;
    try {
        return to_double(e->value);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(source_, e->line, name, err.what());
    }
}

int File::get_int(const std::string& name, int fallback) {
    Entry* e = find(name);
    if (!e) return fallback;
    e->used = true;
    int v = 0;
    const auto [ptr, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), v);
    if (ec != std::errc() || ptr != e->value.data() + e->value.size()) {
        throw ConfigError(source_, e->line, name, "'" + e->value + "' is not an integer");
    }
    return v;
}

bool File::get_bool(const std::string& name, bool fallback) {
    Entry* e = find(name);
    if (!e) return fallback;
    e->used = true;
    if (e->value == "true" || e->value == "yes" || e->value == "1") return true;
    if (e->value == "false" || e->value == "no" || e->value == "0") return false;
    throw ConfigError(source_, e->line, name, "'" + e->value + "' is not a boolean");
}

std::vector<double> File::get_list(const std::string& name, const std::vector<double>& fallback) {
    Entry* e = find(name);
    if (!e) return fallback;
    e->used = true;
    try {
        return parse_list(e->value);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(source_, e->line, name, err.what());
    }
}

void File::fail(const std::string& name, const std::string& message) const {
    const Entry* e = find(name);
    throw ConfigError(source_, e ? e->line : 0, name, message);
}

void File::finish() const {
    for (const auto& e : entries_) {
        if (!e.used) {
            const std::string name = e.section.empty() ? e.key : e.section + "." + e.key;
            throw ConfigError(source_, e.line, name, "unknown key");
        }
    }
}

}  // namespace tricomi::config

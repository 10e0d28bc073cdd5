#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tricomi::config {

/// Problem in a config file. line() is 0 when the key is missing altogether.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& source, int line, const std::string& key, const std::string& message);
    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    int line_;
    std::string key_;
};

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
    std::string raw;
    bool used = false;
};

/// Flat "key = value" file with [section] headers and '#' comments.
///
///     [model]
///     mu = 2      # trailing comments are fine
///
/// Keys are looked up as "section.key". Every lookup marks the entry used;
/// finish() rejects whatever was never looked up.
class File {
public:
    static File parse(std::istream& in, const std::string& source = "<config>");
    static File load(const std::filesystem::path& path);

    const std::string& source() const noexcept { return source_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    /// Non-comment, non-blank lines exactly as written.
    std::vector<std::string> echo() const;

    bool has(const std::string& name) const;
    std::string get_string(const std::string& name, const std::string& fallback);
    double get_double(const std::string& name, double fallback);
    int get_int(const std::string& name, int fallback);
    bool get_bool(const std::string& name, bool fallback);
    std::vector<double> get_list(const std::string& name, const std::vector<double>& fallback);

    /// Throws ConfigError naming line and key; used for value-level checks
    /// made outside this class.
    [[noreturn]] void fail(const std::string& name, const std::string& message) const;

    /// Throws for the first entry that no getter asked for.
    void finish() const;

private:
    Entry* find(const std::string& name);
    const Entry* find(const std::string& name) const;

    std::string source_;
    std::vector<Entry> entries_;
    std::vector<std::string> echo_;
};

/// Parses a comma-separated list of numbers; throws std::invalid_argument.
std::vector<double> parse_list(const std::string& text);

}  // namespace tricomi::config

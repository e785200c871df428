#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bsq/errors.hpp"

namespace bsq::cli {

/// Thrown for unreadable or malformed configuration (exit code 3).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat key/value store. Files contain `key = value` lines under `[section]`
/// headers; a key `T` under `[solve]` is stored as `solve.T`. `#` starts a comment.
class Config {
public:
    static Config parse(std::istream& in, const std::string& origin = "<config>");
    static Config load(const std::string& path);

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

    /// Keys under `section.` that no command reads; reported as errors.
    std::vector<std::string> unknown_keys(const std::string& section, const std::vector<std::string>& known) const;

    const std::map<std::string, std::string>& entries() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
};

double parse_double(const std::string& text, const std::string& what);
std::vector<double> parse_list(const std::string& text, const std::string& what);

}  // namespace bsq::cli

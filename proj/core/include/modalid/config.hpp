#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace modalid {

/// Flat `[section]` / `key = value` configuration file. `#` and `;` start
/// comments. Keys remember their line number for diagnostics, and reads are
/// tracked so that unrecognized keys can be reported as errors.
class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_string(const std::string& text, const std::string& name = "<string>");

    bool has(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key,
                           std::optional<std::string> fallback = {}) const;
    double get_double(const std::string& section, const std::string& key,
                      std::optional<double> fallback = {}) const;
    long long get_int(const std::string& section, const std::string& key,
                      std::optional<long long> fallback = {}) const;
    bool get_bool(const std::string& section, const std::string& key,
                  std::optional<bool> fallback = {}) const;

    /// Overrides or inserts a value (used by --set command-line overrides).
    void set(const std::string& section, const std::string& key, const std::string& value);

    /// Throws config_error naming the first key that was never read.
    void reject_unused() const;

    /// config_error carrying file:line context for the given key.
    [[noreturn]] void fail(const std::string& section, const std::string& key,
                           const std::string& message) const;

    const std::string& name() const { return name_; }

private:
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool used = false;
    };
    std::map<std::string, std::map<std::string, Entry>> sections_;
    std::string name_;

    const Entry* find(const std::string& section, const std::string& key) const;
};

}  // namespace modalid

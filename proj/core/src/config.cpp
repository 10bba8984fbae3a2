#include "modalid/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "modalid/errors.hpp"

namespace modalid {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& name) {
    ConfigFile cfg;
    cfg.name_ = name;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error(name + ":" + std::to_string(lineno) +
                                   ": unterminated section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(name + ":" + std::to_string(lineno) +
                               ": expected 'key = value', got '" + line + "'");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw config_error(name + ":" + std::to_string(lineno) + ": empty key");
        cfg.sections_[section][key] = Entry{value, lineno, false};
    }
    return cfg;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

const ConfigFile::Entry* ConfigFile::find(const std::string& section,
                                          const std::string& key) const {
    const auto sit = sections_.find(lower(section));
    if (sit == sections_.end()) return nullptr;
    const auto kit = sit->second.find(lower(key));
    if (kit == sit->second.end()) return nullptr;
    kit->second.used = true;
    return &kit->second;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   std::optional<std::string> fallback) const {
    const Entry* e = find(section, key);
    if (!e) {
        if (fallback) return *fallback;
        throw config_error(name_ + ": missing required key [" + section + "] " + key);
    }
    return e->value;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              std::optional<double> fallback) const {
    const Entry* e = find(section, key);
    if (!e) {
        if (fallback) return *fallback;
        throw config_error(name_ + ": missing required key [" + section + "] " + key);
    }
    const std::string v = lower(trim(e->value));
    if (v == "inf" || v == "+inf" || v == "infinity")
        return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double d = std::stod(e->value, &used);
        if (trim(e->value.substr(used)).empty()) return d;
    } catch (const std::exception&) {
    }
    fail(section, key, "not a number: '" + e->value + "'");
}

long long ConfigFile::get_int(const std::string& section, const std::string& key,
                              std::optional<long long> fallback) const {
    const Entry* e = find(section, key);
    if (!e) {
        if (fallback) return *fallback;
        throw config_error(name_ + ": missing required key [" + section + "] " + key);
    }
    try {
        std::size_t used = 0;
        const long long v = std::stoll(e->value, &used);
        if (trim(e->value.substr(used)).empty()) return v;
    } catch (const std::exception&) {
    }
    fail(section, key, "not an integer: '" + e->value + "'");
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          std::optional<bool> fallback) const {
    const Entry* e = find(section, key);
    if (!e) {
        if (fallback) return *fallback;
        throw config_error(name_ + ": missing required key [" + section + "] " + key);
    }
    const std::string v = lower(trim(e->value));
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    fail(section, key, "not a boolean: '" + e->value + "'");
}

void ConfigFile::set(const std::string& section, const std::string& key,
                     const std::string& value) {
    sections_[lower(section)][lower(key)] = Entry{value, 0, false};
}

void ConfigFile::reject_unused() const {
    for (const auto& [section, keys] : sections_) {
        for (const auto& [key, entry] : keys) {
            if (!entry.used)
                throw config_error(name_ + ":" + std::to_string(entry.line) +
                                   ": unknown key '" + key + "' in section [" + section +
                                   "]");
        }
    }
}

void ConfigFile::fail(const std::string& section, const std::string& key,
                      const std::string& message) const {
    const auto sit = sections_.find(lower(section));
    int line = 0;
    if (sit != sections_.end()) {
        const auto kit = sit->second.find(lower(key));
        if (kit != sit->second.end()) line = kit->second.line;
    }
    throw config_error(name_ + ":" + std::to_string(line) + ": [" + section + "] " + key +
                       ": " + message);
}

}  // namespace modalid

#include "lppcond/config.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace lppcond {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

Config Config::from_string(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        c.items_[key] = value;
    }
    return c;
}

void Config::set(const std::string& key, const std::string& value) { items_[key] = value; }

bool Config::has(const std::string& key) const { return items_.count(key) > 0; }

std::string Config::get_str(const std::string& key, const std::string& fallback) const {
    const auto it = items_.find(key);
    return it == items_.end() ? fallback : it->second;
}

std::string Config::require_str(const std::string& key) const {
    const auto it = items_.find(key);
    if (it == items_.end()) throw ConfigError("missing required config key: " + key);
    return it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = items_.find(key);
    if (it == items_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not a number: " + it->second);
    }
}

double Config::require_double(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required config key: " + key);
    return get_double(key, 0.0);
}

long long Config::get_int(const std::string& key, long long fallback) const {
    const auto it = items_.find(key);
    if (it == items_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not an integer: " + it->second);
    }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto it = items_.find(key);
    if (it == items_.end()) return fallback;
    std::string v = it->second;
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key " + key + ": not a boolean: " + it->second);
}

std::vector<double> Config::get_list(const std::string& key) const {
    const auto it = items_.find(key);
    std::vector<double> out;
    if (it == items_.end()) return out;
    std::istringstream in(it->second);
    std::string part;
    while (std::getline(in, part, ',')) {
        part = trim(part);
        if (part.empty()) continue;
        try {
            out.push_back(std::stod(part));
        } catch (const std::exception&) {
            throw ConfigError("config key " + key + ": bad list entry: " + part);
        }
    }
    return out;
}

std::string Config::hash() const {
    std::uint64_t h = 1469598103934665603ull; // FNV offset basis
    auto feed = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull; // FNV prime
        }
    };
    for (const auto& [k, v] : items_) { // std::map iterates in sorted key order
        feed(k);
        feed("=");
        feed(v);
        feed("\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace lppcond

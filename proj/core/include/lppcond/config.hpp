#pragma once

// Flat dotted key-value experiment configuration ("model.a = 1", one pair
// per line, '#' comments), with typed getters and a stable content hash.

#include <map>
#include <string>
#include <vector>

#include "lppcond/errors.hpp"

namespace lppcond {

class Config {
public:
    Config() = default;
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_str(const std::string& key, const std::string& fallback) const;
    std::string require_str(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    double require_double(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key) const; // comma-separated

    // FNV-1a over the sorted canonical "key=value" lines.
    std::string hash() const;

    const std::map<std::string, std::string>& items() const { return items_; }

private:
    std::map<std::string, std::string> items_;
};

} // namespace lppcond

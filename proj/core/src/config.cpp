#include "occ/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "occ/errors.hpp"

namespace occ {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::config, "cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_string(buffer.str());
}

Config Config::from_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::config,
                        "line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(stripped.substr(0, eq));
        if (key.empty())
            throw Error(ErrorKind::config, "line " + std::to_string(line_no) + ": empty key");
        cfg.values_[key] = trim(stripped.substr(eq + 1));
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    char* end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end != '\0')
        throw Error(ErrorKind::config, "key '" + key + "': not a number: " + it->second);
    return v;
}

int Config::get_int(const std::string& key, int fallback) const {
    const double v = get_double(key, static_cast<double>(fallback));
    return static_cast<int>(v);
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(it->second.c_str(), &end, 10);
    if (end == it->second.c_str() || *end != '\0')
        throw Error(ErrorKind::config, "key '" + key + "': not an integer: " + it->second);
    return static_cast<std::uint64_t>(v);
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            const std::vector<double>& fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<double> out;
    std::istringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ',')) {
        char* end = nullptr;
        const std::string t = item;
        const double v = std::strtod(t.c_str(), &end);
        if (end == t.c_str())
            throw Error(ErrorKind::config, "key '" + key + "': bad list entry: " + item);
        out.push_back(v);
    }
    if (out.empty())
        throw Error(ErrorKind::config, "key '" + key + "': empty list");
    return out;
}

std::vector<std::string> Config::get_string_list(
    const std::string& key, const std::vector<std::string>& fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<std::string> out;
    std::istringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::string t = item;
        t.erase(std::remove_if(t.begin(), t.end(), [](char c) { return c == ' ' || c == '\t'; }),
                t.end());
        if (!t.empty()) out.push_back(t);
    }
    if (out.empty())
        throw Error(ErrorKind::config, "key '" + key + "': empty list");
    return out;
}

void Config::validate(const std::vector<std::string>& known_keys) const {
    for (const auto& [key, value] : values_) {
        if (std::find(known_keys.begin(), known_keys.end(), key) == known_keys.end())
            throw Error(ErrorKind::config, "unknown config key: " + key);
    }
}

}  // namespace occ

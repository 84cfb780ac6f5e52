#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace occ {

// Flat key=value configuration. Blank lines and '#' comments are
// ignored. Lookups go through typed getters; validate() rejects keys
// outside the declared schema so typos fail fast.
class Config {
public:
    Config() = default;

    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;
    std::vector<std::string> get_string_list(const std::string& key,
                                             const std::vector<std::string>& fallback) const;

    // Throws ErrorKind::config naming the first unknown key.
    void validate(const std::vector<std::string>& known_keys) const;

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace occ

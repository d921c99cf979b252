#pragma once

#include <map>
#include <string>

namespace defectbethe {

// key = value file; '#' starts a comment, blank lines are ignored
class Config {
public:
    Config() = default;
    static Config load(const std::string& path);
    static Config parse(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    // throws DomainError if the value is present but not a number
    double get_double(const std::string& key, double fallback) const;
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
    std::string origin_;
};

}  // namespace defectbethe

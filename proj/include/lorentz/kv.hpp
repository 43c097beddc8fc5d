#pragma once

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "lorentz/errors.hpp"

namespace lorentz {

/// Minimal ordered key-value document: one `key = value` pair per line,
/// `#` starts a comment. Repeated keys are preserved in order. Doubles are
/// written with 17 significant digits so round-trips are exact.
class KvDoc {
  public:
    void add(const std::string& key, const std::string& value) { lines_.push_back({key, value}); }
    void add(const std::string& key, double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        add(key, std::string(buf));
    }
    void add(const std::string& key, long long v) { add(key, std::to_string(v)); }
    void add(const std::string& key, int v) { add(key, std::to_string(v)); }
    void add_pair(const std::string& key, double a, double b) {
        char buf[84];
        std::snprintf(buf, sizeof buf, "%.17g %.17g", a, b);
        add(key, std::string(buf));
    }

    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const;             // throws ConfigError if absent
    std::string get_or(const std::string& key, std::string dflt) const;
    double get_double(const std::string& key) const;
    long long get_int(const std::string& key) const;
    std::vector<double> get_doubles(const std::string& key) const;    // whitespace-separated
    std::vector<std::string> get_all(const std::string& key) const;   // repeated keys, in order

    std::string to_string() const;
    static KvDoc parse(const std::string& text);

    const std::vector<std::pair<std::string, std::string>>& lines() const { return lines_; }

  private:
    std::vector<std::pair<std::string, std::string>> lines_;
};

}  // namespace lorentz

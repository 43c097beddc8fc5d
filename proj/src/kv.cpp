#include "lorentz/kv.hpp"

#include <cstdlib>
#include <sstream>

namespace lorentz {

bool KvDoc::has(const std::string& key) const {
    for (const auto& [k, v] : lines_)
        if (k == key) return true;
    return false;
}

const std::string& KvDoc::get(const std::string& key) const {
    for (const auto& [k, v] : lines_)
        if (k == key) return v;
    throw ConfigError("missing key: " + key);
}

std::string KvDoc::get_or(const std::string& key, std::string dflt) const {
    for (const auto& [k, v] : lines_)
        if (k == key) return v;
    return dflt;
}

double KvDoc::get_double(const std::string& key) const {
    const std::string& s = get(key);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw ConfigError("key " + key + ": not a number: " + s);
    return v;
}

long long KvDoc::get_int(const std::string& key) const {
    const std::string& s = get(key);
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (end == s.c_str()) throw ConfigError("key " + key + ": not an integer: " + s);
    return v;
}

std::vector<double> KvDoc::get_doubles(const std::string& key) const {
    std::istringstream in(get(key));
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    return out;
}

std::vector<std::string> KvDoc::get_all(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : lines_)
        if (k == key) out.push_back(v);
    return out;
}

std::string KvDoc::to_string() const {
    std::string out;
    for (const auto& [k, v] : lines_) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

KvDoc KvDoc::parse(const std::string& text) {
    KvDoc doc;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const char* ws = " \t\r";
            auto b = s.find_first_not_of(ws);
            if (b == std::string::npos) return std::string();
            auto e = s.find_last_not_of(ws);
            return s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) doc.add(key, value);
    }
    return doc;
}

}  // namespace lorentz

#include "bicost/config.hpp"

#include <cctype>
#include <cstdlib>

#include "bicost/csv.hpp"
#include "bicost/errors.hpp"

namespace bicost::io {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    int dots = 0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        const char c = k[i];
        if (c == '.') {
            // one namespace level, never at either end or doubled
            if (++dots > 1 || i == 0 || i + 1 == k.size() || k[i - 1] == '.')
                return false;
        } else if (!(std::islower(static_cast<unsigned char>(c)) ||
                     std::isdigit(static_cast<unsigned char>(c)) ||
                     c == '_')) {
            return false;
        }
    }
    return true;
}

} // namespace

KeyValueConfig KeyValueConfig::parse_text(const std::string& text) {
    KeyValueConfig cfg;
    std::size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string line = text.substr(
            pos, eol == std::string::npos ? std::string::npos : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++lineno;

        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key))
            throw config_error("config line " + std::to_string(lineno) +
                               ": bad key '" + key +
                               "' (lowercase/digits/underscore, at most one "
                               "dot)");
        if (value.empty())
            throw config_error("config line " + std::to_string(lineno) +
                               ": empty value for '" + key + "'");
        if (!cfg.entries_.emplace(key, value).second)
            throw config_error("config line " + std::to_string(lineno) +
                               ": duplicate key '" + key + "'");
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    return parse_text(read_text_file(path));
}

bool KeyValueConfig::has(const std::string& key) const {
    return entries_.count(key) != 0;
}

const std::string& KeyValueConfig::raw(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end())
        throw config_error("config: missing key '" + key + "'");
    return it->second;
}

double KeyValueConfig::as_double(const std::string& key) const {
    const std::string& v = raw(key);
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw config_error("config: key '" + key + "' is not a number: '" +
                           v + "'");
    return d;
}

long KeyValueConfig::as_long(const std::string& key) const {
    const std::string& v = raw(key);
    char* end = nullptr;
    const long n = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw config_error("config: key '" + key + "' is not an integer: '" +
                           v + "'");
    return n;
}

} // namespace bicost::io

#ifndef BICOST_CONFIG_HPP
#define BICOST_CONFIG_HPP

#include <map>
#include <string>

namespace bicost::io {

/// Flat `key = value` text with at most one dotted namespace level
/// (e.g. profile.b1).  '#' starts a comment; blank lines are skipped;
/// duplicate keys are rejected.  Values stay strings until a typed getter
/// converts them.
class KeyValueConfig {
public:
    static KeyValueConfig parse_text(const std::string& text);
    static KeyValueConfig parse_file(const std::string& path);

    bool has(const std::string& key) const;
    const std::string& raw(const std::string& key) const; ///< throws if absent
    double as_double(const std::string& key) const;
    long as_long(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const {
        return entries_;
    }

private:
    std::map<std::string, std::string> entries_;
};

} // namespace bicost::io

#endif

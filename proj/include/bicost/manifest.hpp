#ifndef BICOST_MANIFEST_HPP
#define BICOST_MANIFEST_HPP

#include <map>
#include <string>
#include <vector>

namespace bicost::io {

inline constexpr const char* kToolName = "bicost";
inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64-bit content hash, rendered as "fnv1a64:<16 hex digits>".
std::string content_checksum(const std::string& bytes);

/// Reproducibility record written next to every artifact set.  The wall
/// time makes the manifest itself non-deterministic by design; the
/// artifacts it describes are byte-stable.
struct RunManifest {
    std::map<std::string, std::string> config; ///< resolved settings echo
    double wall_ms = 0;
    struct FileRecord {
        std::string path;
        std::size_t bytes = 0;
        std::string checksum;
    };
    std::vector<FileRecord> files;

    void add_file(const std::string& path, const std::string& bytes);
    std::string to_json() const;
    /// Writes `<out_path>.manifest.json`.
    void write_next_to(const std::string& out_path) const;
};

} // namespace bicost::io

#endif

#include "bicost/manifest.hpp"

#include <cstdio>

#include <json.hpp>

#include "bicost/csv.hpp"

namespace bicost::io {

std::string content_checksum(const std::string& bytes) {
    unsigned long long h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", h);
    return buf;
}

void RunManifest::add_file(const std::string& path, const std::string& bytes) {
    files.push_back({path, bytes.size(), content_checksum(bytes)});
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["wall_ms"] = wall_ms;
    j["config"] = config;
    j["files"] = nlohmann::json::array();
    for (const FileRecord& f : files)
        j["files"].push_back(
            {{"path", f.path}, {"bytes", f.bytes}, {"checksum", f.checksum}});
    return j.dump(2) + "\n";
}

void RunManifest::write_next_to(const std::string& out_path) const {
    write_text_file(out_path + ".manifest.json", to_json());
}

} // namespace bicost::io

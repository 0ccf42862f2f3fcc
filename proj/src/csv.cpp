#include "bicost/csv.hpp"

#include <cstdio>

#include "bicost/errors.hpp"

namespace bicost::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const Table& t) {
    if (t.columns.empty())
        throw config_error("to_csv: table has no columns");
    std::string out;
    out.reserve(64 * (t.rows.size() + 2));
    for (const std::string& c : t.comments) {
        out += "# ";
        out += c;
        out += '\n';
    }
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
        if (j) out += ',';
        out += t.columns[j];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size())
            throw config_error("to_csv: ragged row");
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            out += format_double(row[j]);
        }
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw io_error("cannot open for writing: " + path);
    const std::size_t n = std::fwrite(text.data(), 1, text.size(), f);
    const bool bad = n != text.size();
    if (std::fclose(f) != 0 || bad)
        throw io_error("short write: " + path);
}

std::string read_text_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw io_error("cannot open for reading: " + path);
    std::string text;
    char buf[1 << 14];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
    const bool bad = std::ferror(f);
    std::fclose(f);
    if (bad) throw io_error("read failure: " + path);
    return text;
}

} // namespace bicost::io

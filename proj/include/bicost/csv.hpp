#ifndef BICOST_CSV_HPP
#define BICOST_CSV_HPP

#include <string>
#include <vector>

namespace bicost::io {

/// Rectangular numeric table with a mandatory header row and optional
/// leading comment lines (emitted with a "# " prefix).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> comments;
};

/// Shortest round-trippable decimal form ("%.17g", C locale, so the
/// decimal separator is always '.').
std::string format_double(double v);

/// Serialize with comma separators and '\n' line ends; byte-deterministic
/// for identical input.  Throws config_error on ragged rows or an empty
/// header.
std::string to_csv(const Table& t);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace bicost::io

#endif

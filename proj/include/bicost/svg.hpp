#ifndef BICOST_SVG_HPP
#define BICOST_SVG_HPP

#include <string>
#include <vector>

#include "bicost/csv.hpp"

namespace bicost::io {

/// Line-plot styling.  `dash` entries are SVG stroke-dasharray strings
/// ("" = solid) applied per series and cycled if shorter than the series
/// list.
struct SvgStyle {
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 960;
    int height = 600;
    std::vector<std::string> dash;
};

/// Render column 0 against every other column as one polyline each, with
/// axes, ticks, and a legend of column names.  Deterministic byte output
/// for identical input: fixed-precision coordinates, no timestamps.
/// Non-finite samples split a polyline rather than distorting it.
/// Requires at least two rows and two columns.
std::string render_svg(const Table& t, const SvgStyle& style);

} // namespace bicost::io

#endif

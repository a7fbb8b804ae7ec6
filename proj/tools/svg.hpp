#pragma once

// Minimal SVG renderings of output tables: grayscale heatmaps (negative
// cells black) and line plots.

#include <string>
#include <vector>

#include "cli.hpp"

namespace casimir::cli {

/// Heatmap of column `value` over the distinct values of `col_x` and `col_y`.
std::string svg_heatmap(const Table& table, const std::string& col_x, const std::string& col_y,
                        const std::string& value, const std::string& title);

/// One polyline per column in `series` against `col_x`.
std::string svg_lines(const Table& table, const std::string& col_x,
                      const std::vector<std::string>& series, const std::string& title);

}  // namespace casimir::cli

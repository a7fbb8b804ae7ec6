#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace casimir::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 50.0;

std::size_t column_index(const Table& table, const std::string& name) {
  const auto it = std::find(table.columns.begin(), table.columns.end(), name);
  if (it == table.columns.end()) throw std::invalid_argument("no column named " + name);
  return static_cast<std::size_t>(it - table.columns.begin());
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void open(std::ostringstream& s, const std::string& title) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"25\" text-anchor=\"middle\" font-size=\"16\">"
    << escape(title) << "</text>\n";
}

void axes(std::ostringstream& s, const std::string& xlabel, const std::string& ylabel, double x0,
          double x1, double y0, double y1) {
  s << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
    << "\" height=\"" << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
  s << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
    << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(xlabel) << " [" << x0 << ", " << x1
    << "]</text>\n";
  s << "<text x=\"14\" y=\"" << kHeight / 2 << "\" font-size=\"12\" transform=\"rotate(-90 14 "
    << kHeight / 2 << ")\" text-anchor=\"middle\">" << escape(ylabel) << " [" << y0 << ", " << y1
    << "]</text>\n";
}

}  // namespace

std::string svg_heatmap(const Table& table, const std::string& col_x, const std::string& col_y,
                        const std::string& value, const std::string& title) {
  const auto ix = column_index(table, col_x);
  const auto iy = column_index(table, col_y);
  const auto iv = column_index(table, value);
  std::map<double, std::size_t> xs;
  std::map<double, std::size_t> ys;
  double vmax = 0.0;
  for (const auto& row : table.rows) {
    xs.emplace(row[ix], 0);
    ys.emplace(row[iy], 0);
    if (std::isfinite(row[iv])) vmax = std::max(vmax, row[iv]);
  }
  std::size_t k = 0;
  for (auto& [v, i] : xs) i = k++;
  k = 0;
  for (auto& [v, i] : ys) i = k++;

  std::ostringstream s;
  open(s, title);
  if (!table.rows.empty()) {
    const double cw = (kWidth - 2 * kMargin) / static_cast<double>(xs.size());
    const double ch = (kHeight - 2 * kMargin) / static_cast<double>(ys.size());
    for (const auto& row : table.rows) {
      const double v = row[iv];
      int gray = 0;
      if (std::isfinite(v) && v >= 0.0)
        gray = vmax > 0.0 ? 48 + static_cast<int>(std::lround(207.0 * v / vmax)) : 48;
      const double px = kMargin + cw * static_cast<double>(xs[row[ix]]);
      const double py = kHeight - kMargin - ch * static_cast<double>(ys[row[iy]] + 1);
      s << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cw << "\" height=\"" << ch
        << "\" fill=\"rgb(" << gray << ',' << gray << ',' << gray << ")\"/>\n";
    }
    axes(s, col_x, col_y, xs.begin()->first, xs.rbegin()->first, ys.begin()->first,
         ys.rbegin()->first);
  }
  s << "</svg>\n";
  return s.str();
}

std::string svg_lines(const Table& table, const std::string& col_x,
                      const std::vector<std::string>& series, const std::string& title) {
  static const char* const kColors[] = {"black", "#c03030", "#3050c0", "#30a040"};
  const auto ix = column_index(table, col_x);
  std::vector<std::size_t> cols;
  for (const auto& name : series) cols.push_back(column_index(table, name));

  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -x0;
  double y0 = x0;
  double y1 = -x0;
  for (const auto& row : table.rows) {
    x0 = std::min(x0, row[ix]);
    x1 = std::max(x1, row[ix]);
    for (auto c : cols) {
      if (!std::isfinite(row[c])) continue;
      y0 = std::min(y0, row[c]);
      y1 = std::max(y1, row[c]);
    }
  }
  std::ostringstream s;
  open(s, title);
  if (!table.rows.empty() && y0 <= y1) {
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;
    const double sx = (kWidth - 2 * kMargin) / (x1 - x0);
    const double sy = (kHeight - 2 * kMargin) / (y1 - y0);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      s << "<polyline fill=\"none\" stroke=\"" << kColors[k % 4] << "\" points=\"";
      for (const auto& row : table.rows) {
        if (!std::isfinite(row[cols[k]])) continue;
        s << kMargin + sx * (row[ix] - x0) << ',' << kHeight - kMargin - sy * (row[cols[k]] - y0)
          << ' ';
      }
      s << "\"/>\n";
      s << "<text x=\"" << kWidth - kMargin - 5 << "\" y=\"" << kMargin + 15 + 15 * k
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << kColors[k % 4] << "\">"
        << escape(series[k]) << "</text>\n";
    }
    axes(s, col_x, "value", x0, x1, y0, y1);
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace casimir::cli

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace oscillab {

/// Shortest exact decimal form (%.17g); all emitted numbers go through this
/// so that identical runs produce identical bytes.
std::string fmt_double(double v);

void write_text_file(const std::string& path, const std::string& content);

/// CSV with a header line; every cell is preformatted text.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows);

/// Minimal log-log scatter/line plot writer. Points and lines live in
/// log10 coordinates of the data.
struct SvgSeries {
    std::vector<std::pair<double, double>> points;  // (x, y), positive
    std::string color = "#1f6fb2";
    std::string label;
};

struct SvgLine {
    double slope = 0.0;      // in log10-log10 coordinates
    double intercept = 0.0;  // log10 y at log10 x = 0
    std::string color = "#d95f02";
    std::string label;
    bool dashed = false;
};

void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series, const std::vector<SvgLine>& lines);

}  // namespace oscillab

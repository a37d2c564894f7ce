#include "oscillab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace oscillab {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw std::runtime_error("cannot open for writing: " + path);
    if (!content.empty()) std::fwrite(content.data(), 1, content.size(), fp);
    std::fclose(fp);
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::string out = header;
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    write_text_file(path, out);
}

namespace {

struct Bounds {
    double lo_x = 0.0, hi_x = 1.0, lo_y = 0.0, hi_y = 1.0;
};

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

}  // namespace

void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series, const std::vector<SvgLine>& lines) {
    const double W = 720, H = 500;
    const double ml = 80, mr = 30, mt = 48, mb = 64;

    Bounds b;
    bool have = false;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (!(x > 0.0) || !(y > 0.0)) continue;
            const double lx = std::log10(x), ly = std::log10(y);
            if (!have) {
                b = {lx, lx, ly, ly};
                have = true;
            } else {
                b.lo_x = std::min(b.lo_x, lx);
                b.hi_x = std::max(b.hi_x, lx);
                b.lo_y = std::min(b.lo_y, ly);
                b.hi_y = std::max(b.hi_y, ly);
            }
        }
    if (!have) b = {0.0, 1.0, 0.0, 1.0};
    const double pad_x = std::max(0.05, 0.06 * (b.hi_x - b.lo_x));
    const double pad_y = std::max(0.05, 0.10 * (b.hi_y - b.lo_y));
    b.lo_x -= pad_x;
    b.hi_x += pad_x;
    b.lo_y -= pad_y;
    b.hi_y += pad_y;

    auto px = [&](double lx) { return ml + (lx - b.lo_x) / (b.hi_x - b.lo_x) * (W - ml - mr); };
    auto py = [&](double ly) { return H - mb - (ly - b.lo_y) / (b.hi_y - b.lo_y) * (H - mt - mb); };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_coord(W) + "\" height=\"" +
           fmt_coord(H) + "\" viewBox=\"0 0 " + fmt_coord(W) + " " + fmt_coord(H) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt_coord(W / 2) + "\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">" +
           title + "</text>\n";

    // axes box
    svg += "<rect x=\"" + fmt_coord(ml) + "\" y=\"" + fmt_coord(mt) + "\" width=\"" +
           fmt_coord(W - ml - mr) + "\" height=\"" + fmt_coord(H - mt - mb) +
           "\" fill=\"none\" stroke=\"#333\"/>\n";

    // decade-ish ticks
    auto ticks = [](double lo, double hi) {
        std::vector<double> t;
        const double span = hi - lo;
        double step = 1.0;
        if (span < 1.5) step = 0.25;
        else if (span < 3.0) step = 0.5;
        for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12; v += step) t.push_back(v);
        return t;
    };
    for (double lx : ticks(b.lo_x, b.hi_x)) {
        const double x = px(lx);
        svg += "<line x1=\"" + fmt_coord(x) + "\" y1=\"" + fmt_coord(H - mb) + "\" x2=\"" +
               fmt_coord(x) + "\" y2=\"" + fmt_coord(H - mb + 6) + "\" stroke=\"#333\"/>\n";
        svg += "<line x1=\"" + fmt_coord(x) + "\" y1=\"" + fmt_coord(mt) + "\" x2=\"" +
               fmt_coord(x) + "\" y2=\"" + fmt_coord(H - mb) +
               "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
        svg += "<text x=\"" + fmt_coord(x) + "\" y=\"" + fmt_coord(H - mb + 22) +
               "\" font-size=\"12\" text-anchor=\"middle\">" + fmt_tick(std::pow(10.0, lx)) +
               "</text>\n";
    }
    for (double ly : ticks(b.lo_y, b.hi_y)) {
        const double y = py(ly);
        svg += "<line x1=\"" + fmt_coord(ml - 6) + "\" y1=\"" + fmt_coord(y) + "\" x2=\"" +
               fmt_coord(ml) + "\" y2=\"" + fmt_coord(y) + "\" stroke=\"#333\"/>\n";
        svg += "<line x1=\"" + fmt_coord(ml) + "\" y1=\"" + fmt_coord(y) + "\" x2=\"" +
               fmt_coord(W - mr) + "\" y2=\"" + fmt_coord(y) +
               "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
        svg += "<text x=\"" + fmt_coord(ml - 10) + "\" y=\"" + fmt_coord(y + 4) +
               "\" font-size=\"12\" text-anchor=\"end\">" + fmt_tick(std::pow(10.0, ly)) +
               "</text>\n";
    }
    svg += "<text x=\"" + fmt_coord(W / 2) + "\" y=\"" + fmt_coord(H - 16) +
           "\" font-size=\"13\" text-anchor=\"middle\">" + xlabel + "</text>\n";
    svg += "<text x=\"20\" y=\"" + fmt_coord(H / 2) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
           fmt_coord(H / 2) + ")\">" + ylabel + "</text>\n";

    // fitted / reference lines clipped to the box
    for (const auto& ln : lines) {
        const double y1 = ln.intercept + ln.slope * b.lo_x;
        const double y2 = ln.intercept + ln.slope * b.hi_x;
        svg += "<line x1=\"" + fmt_coord(px(b.lo_x)) + "\" y1=\"" + fmt_coord(py(y1)) +
               "\" x2=\"" + fmt_coord(px(b.hi_x)) + "\" y2=\"" + fmt_coord(py(y2)) +
               "\" stroke=\"" + ln.color + "\" stroke-width=\"1.5\"" +
               (ln.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    }

    int legend_row = 0;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!(x > 0.0) || !(y > 0.0)) continue;
            svg += "<circle cx=\"" + fmt_coord(px(std::log10(x))) + "\" cy=\"" +
                   fmt_coord(py(std::log10(y))) + "\" r=\"3.5\" fill=\"" + s.color + "\"/>\n";
        }
        if (!s.label.empty()) {
            const double ly = mt + 18 + 18 * legend_row++;
            svg += "<circle cx=\"" + fmt_coord(ml + 14) + "\" cy=\"" + fmt_coord(ly - 4) +
                   "\" r=\"3.5\" fill=\"" + s.color + "\"/>\n";
            svg += "<text x=\"" + fmt_coord(ml + 24) + "\" y=\"" + fmt_coord(ly) +
                   "\" font-size=\"12\">" + s.label + "</text>\n";
        }
    }
    for (const auto& ln : lines) {
        if (ln.label.empty()) continue;
        const double ly = mt + 18 + 18 * legend_row++;
        svg += "<line x1=\"" + fmt_coord(ml + 6) + "\" y1=\"" + fmt_coord(ly - 4) + "\" x2=\"" +
               fmt_coord(ml + 22) + "\" y2=\"" + fmt_coord(ly - 4) + "\" stroke=\"" + ln.color +
               "\" stroke-width=\"1.5\"" + (ln.dashed ? " stroke-dasharray=\"6 4\"" : "") +
               "/>\n";
        svg += "<text x=\"" + fmt_coord(ml + 28) + "\" y=\"" + fmt_coord(ly) +
               "\" font-size=\"12\">" + ln.label + "</text>\n";
    }

    svg += "</svg>\n";
    write_text_file(path, svg);
}

}  // namespace oscillab

#include "oscillab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace oscillab {

void GridSpec::validate() const {
    if (nx < 2 || ny < 2 || nt < 2)
        throw std::invalid_argument("GridSpec: counts must be >= 2");
    if (!(x_lo < x_hi) || !(y_lo < y_hi) || !(t_lo < t_hi))
        throw std::invalid_argument("GridSpec: ranges must be nonempty");
    if (x_lo > -1.0 || x_hi < 1.0 || y_lo > -1.0 || y_hi < 1.0)
        throw std::invalid_argument("GridSpec: (x,y) ranges must cover the cutoff support");
    if (t_lo > -1.0 || t_hi < 1.0)
        throw std::invalid_argument("GridSpec: t range must cover the cutoff support");
}

double Axis::length() const {
    double sum = 0.0;
    for (double w : weight) sum += w;
    return sum;
}

Axis Axis::uniform(double lo, double hi, int n) {
    if (n < 1 || !(lo < hi)) throw std::invalid_argument("Axis::uniform: bad range");
    Axis a;
    a.node.resize(n);
    a.weight.resize(n);
    const double h = (hi - lo) / n;
    for (int i = 0; i < n; ++i) {
        a.node[i] = lo + (i + 0.5) * h;
        a.weight[i] = h;
    }
    return a;
}

Axis Axis::graded(double scale, double extent, int cells_per_block) {
    if (!(extent > 0.0) || cells_per_block < 1)
        throw std::invalid_argument("Axis::graded: bad parameters");
    const double s = std::min(std::max(scale, 0.0), extent);

    std::vector<double> edges;
    edges.push_back(0.0);
    if (s >= extent || s <= 0.0) {
        edges.push_back(extent);
    } else {
        edges.push_back(s);
        double e = s;
        while (e < extent) {
            e = std::min(2.0 * e, extent);
            edges.push_back(e);
        }
    }

    Axis a;
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
        const double lo = edges[b], hi = edges[b + 1];
        const double h = (hi - lo) / cells_per_block;
        for (int i = 0; i < cells_per_block; ++i) {
            a.node.push_back(lo + (i + 0.5) * h);
            a.weight.push_back(h);
        }
    }
    // mirror to the negative side
    const std::size_t half = a.node.size();
    Axis full;
    full.node.resize(2 * half);
    full.weight.resize(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
        full.node[half - 1 - i] = -a.node[i];
        full.weight[half - 1 - i] = a.weight[i];
        full.node[half + i] = a.node[i];
        full.weight[half + i] = a.weight[i];
    }
    return full;
}

Grid2D Grid2D::from_spec(const GridSpec& g) {
    g.validate();
    Grid2D out;
    out.x = Axis::uniform(g.x_lo, g.x_hi, g.nx);
    out.y = Axis::uniform(g.y_lo, g.y_hi, g.ny);
    return out;
}

bool SampledField::all_converged() const {
    return std::all_of(flags.begin(), flags.end(), [](std::uint8_t f) { return f == 0; });
}

void SampledField::write_csv(const std::string& path) const {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw std::runtime_error("SampledField::write_csv: cannot open " + path);
    std::fprintf(fp, "i,j,x,y,re,im\n");
    for (std::size_t i = 0; i < grid.x.size(); ++i)
        for (std::size_t j = 0; j < grid.y.size(); ++j) {
            const auto v = at(i, j);
            std::fprintf(fp, "%zu,%zu,%.17g,%.17g,%.17g,%.17g\n", i, j, grid.x.node[i],
                         grid.y.node[j], v.real(), v.imag());
        }
    std::fclose(fp);
}

std::complex<double> cubic_interp(const SampledLine& line, double t) {
    const std::size_t n = line.size();
    if (n == 0) return {0.0, 0.0};
    const double h = line.t.weight.front();
    const double lo = line.t.node.front() - 0.5 * h;
    const double hi = line.t.node.back() + 0.5 * h;
    if (t < lo || t > hi) return {0.0, 0.0};
    if (n == 1) return line.values[0];

    // fractional position relative to the node lattice
    double u = (t - line.t.node.front()) / h;
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(std::floor(u));
    double s = u - static_cast<double>(i);
    auto clamped = [&](std::ptrdiff_t idx) {
        idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(n) - 1);
        return line.values[static_cast<std::size_t>(idx)];
    };
    const std::complex<double> p0 = clamped(i - 1), p1 = clamped(i), p2 = clamped(i + 1),
                               p3 = clamped(i + 2);
    return 0.5 * (2.0 * p1 + (-p0 + p2) * s + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * (s * s) +
                  (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * (s * s * s));
}

}  // namespace oscillab

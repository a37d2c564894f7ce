#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace oscillab {

/// Uniform sampling box for operator experiments. The (x,y) ranges must
/// cover the cutoff support |coordinate| <= 1, and the t range must cover
/// the t-support of the cutoff.
struct GridSpec {
    double x_lo = -1.25, x_hi = 1.25;
    double y_lo = -1.25, y_hi = 1.25;
    double t_lo = -1.0, t_hi = 1.0;
    int nx = 32, ny = 32, nt = 128;

    void validate() const;
    double hx() const { return (x_hi - x_lo) / nx; }
    double hy() const { return (y_hi - y_lo) / ny; }
    double ht() const { return (t_hi - t_lo) / nt; }
};

/// One axis of cell-centred nodes with per-cell weights (cell widths).
struct Axis {
    std::vector<double> node;
    std::vector<double> weight;

    std::size_t size() const { return node.size(); }
    double length() const;

    /// n uniform cells on [lo, hi], midpoint nodes.
    static Axis uniform(double lo, double hi, int n);

    /// Symmetric axis on [-extent, extent] graded toward 0: a central block
    /// [0, scale] with cells_per_block uniform cells, then dyadic blocks
    /// [scale*2^(j-1), scale*2^j] of cells_per_block cells each out to
    /// extent, mirrored to the negative side.
    static Axis graded(double scale, double extent, int cells_per_block);
};

struct Grid2D {
    Axis x, y;
    std::size_t size() const { return x.size() * y.size(); }

    static Grid2D from_spec(const GridSpec& g);
};

/// Per-node status bits carried alongside field/line values.
enum NodeFlag : std::uint8_t {
    kFlagQuadNotConverged = 1,
};

/// Complex samples on a 2-D grid, row-major in (i = x index, j = y index).
struct SampledField {
    Grid2D grid;
    std::vector<std::complex<double>> values;
    std::vector<std::uint8_t> flags;

    SampledField() = default;
    explicit SampledField(Grid2D g)
        : grid(std::move(g)), values(grid.size()), flags(grid.size(), 0) {}

    std::size_t index(std::size_t i, std::size_t j) const { return i * grid.y.size() + j; }
    std::complex<double>& at(std::size_t i, std::size_t j) { return values[index(i, j)]; }
    const std::complex<double>& at(std::size_t i, std::size_t j) const {
        return values[index(i, j)];
    }
    bool all_converged() const;

    /// CSV with columns: i, j, x, y, re, im.
    void write_csv(const std::string& path) const;
};

/// Complex samples along the t axis.
struct SampledLine {
    Axis t;
    std::vector<std::complex<double>> values;
    std::vector<std::uint8_t> flags;

    SampledLine() = default;
    explicit SampledLine(Axis axis) : t(std::move(axis)), values(t.size()), flags(t.size(), 0) {}
    std::size_t size() const { return t.size(); }
};

/// C1 cubic (Catmull-Rom) interpolation of line samples at an arbitrary
/// abscissa; zero outside the sampled range. Requires a uniform axis.
std::complex<double> cubic_interp(const SampledLine& line, double t);

}  // namespace oscillab

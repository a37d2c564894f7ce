#include "oscillab/serial_ref.hpp"

#include <cmath>

namespace oscillab::serial_ref {

SampledField apply_T(const PhaseParams& params, double lambda,
                     const std::function<std::complex<double>(double)>& f, double t_lo,
                     double t_hi, const Grid2D& grid, const CutoffSpec& cutoff,
                     const QuadratureSpec& qspec) {
    SampledField field(grid);
    for (std::size_t i = 0; i < grid.x.size(); ++i) {
        const double x = grid.x.node[i];
        const double xm = ipow(x, params.m);
        for (std::size_t j = 0; j < grid.y.size(); ++j) {
            const double y = grid.y.node[j];
            const double yn = ipow(y, params.n);
            auto phase = [&](double t) {
                return xm * ipow(t, params.k) + yn * ipow(t, params.l);
            };
            auto amp = [&](double t) -> std::complex<double> {
                return cutoff.psi(x, y, t) * f(t);
            };
            QuadResult r = integrate_oscillatory(phase, amp, t_lo, t_hi, lambda, qspec);
            field.at(i, j) = r.value;
            field.flags[field.index(i, j)] = r.converged ? 0 : kFlagQuadNotConverged;
        }
    }
    return field;
}

SampledLine apply_T_star(const PhaseParams& params, double lambda, const SampledField& g,
                         const Axis& t_axis, const CutoffSpec& cutoff) {
    SampledLine line(t_axis);
    for (std::size_t r = 0; r < t_axis.size(); ++r) {
        const double t = t_axis.node[r];
        const double tk = ipow(t, params.k);
        const double tl = ipow(t, params.l);
        std::complex<double> sum{0.0, 0.0};
        for (std::size_t a = 0; a < g.grid.x.size(); ++a) {
            const double u = g.grid.x.node[a];
            const double um_tk = ipow(u, params.m) * tk;
            std::complex<double> row{0.0, 0.0};
            for (std::size_t b = 0; b < g.grid.y.size(); ++b) {
                const double v = g.grid.y.node[b];
                const double amp = cutoff.psi(u, v, t);
                if (amp == 0.0) continue;
                const double ph = -lambda * (um_tk + ipow(v, params.n) * tl);
                row += (amp * g.grid.y.weight[b]) * std::polar(1.0, ph) * g.at(a, b);
            }
            sum += g.grid.x.weight[a] * row;
        }
        line.values[r] = sum;
    }
    return line;
}

SampledField apply_TK(const PhaseParams& params, double lambda, const SampledField& g,
                      const CutoffSpec& cutoff, const QuadratureSpec& qspec) {
    SampledField out(g.grid);
    const std::size_t ny = g.grid.y.size();
    for (std::size_t i = 0; i < g.grid.x.size(); ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            std::complex<double> sum{0.0, 0.0};
            for (std::size_t a = 0; a < g.grid.x.size(); ++a)
                for (std::size_t b = 0; b < ny; ++b) {
                    const std::complex<double> gv = g.at(a, b);
                    if (gv == std::complex<double>(0.0, 0.0)) continue;
                    QuadResult K = kernel_K(params, lambda, g.grid.x.node[a], g.grid.y.node[b],
                                            g.grid.x.node[i], g.grid.y.node[j], cutoff, qspec);
                    sum += K.value * gv * (g.grid.x.weight[a] * g.grid.y.weight[b]);
                }
            out.at(i, j) = sum;
        }
    return out;
}

}  // namespace oscillab::serial_ref

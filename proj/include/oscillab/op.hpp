#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "oscillab/grid.hpp"
#include "oscillab/parallel.hpp"
#include "oscillab/phase.hpp"
#include "oscillab/quad.hpp"

namespace oscillab {

/// unit_box freezes both cutoff factors to 1 on |t| <= 1; used by tests to
/// expose the translation structure of the kernel.
enum class CutoffMode { psi_pair, unit_box };

/// lambda * h * sup|phase gradient| <= 1/4 in both u and v; Riemann sums
/// over (u,v) are trustworthy only under this guard.
bool resolution_guard_ok(const PhaseParams& params, double lambda, const Grid2D& grid);

namespace detail {
template <class F>
void apply_T_node(const PhaseParams& params, double lambda, F& f, double t_lo, double t_hi,
                  double x, double y, const CutoffSpec& cutoff, const QuadratureSpec& qspec,
                  std::complex<double>& out_value, std::uint8_t& out_flag) {
    const double xm = ipow(x, params.m);
    const double yn = ipow(y, params.n);
    const int k = params.k, l = params.l;
    auto phase = [xm, yn, k, l](double t) { return xm * ipow(t, k) + yn * ipow(t, l); };
    auto amp = [&](double t) -> std::complex<double> { return cutoff.psi(x, y, t) * f(t); };
    QuadResult r = integrate_oscillatory(phase, amp, t_lo, t_hi, lambda, qspec);
    out_value = r.value;
    out_flag = r.converged ? 0 : kFlagQuadNotConverged;
}
}  // namespace detail

/// T f sampled on a grid: at each node, the 1-D oscillatory t-integral of
/// exp(i lambda S(x,y,t)) psi(x,y,t) f(t) over [t_lo, t_hi]. The callable
/// form evaluates f exactly (f must be thread-safe); the sampled-line form
/// goes through cubic interpolation.
template <class F>
SampledField apply_T(const PhaseParams& params, double lambda, F&& f, double t_lo, double t_hi,
                     const Grid2D& grid, const CutoffSpec& cutoff, const QuadratureSpec& qspec,
                     int jobs = -1) {
    SampledField field(grid);
    const std::size_t ny = grid.y.size();
    parallel_for(
        static_cast<std::int64_t>(grid.size()),
        [&](std::int64_t idx) {
            const std::size_t i = static_cast<std::size_t>(idx) / ny;
            const std::size_t j = static_cast<std::size_t>(idx) % ny;
            detail::apply_T_node(params, lambda, f, t_lo, t_hi, grid.x.node[i], grid.y.node[j],
                                 cutoff, qspec, field.values[idx], field.flags[idx]);
        },
        jobs);
    return field;
}

SampledField apply_T(const PhaseParams& params, double lambda,
                     const std::function<std::complex<double>(double)>& f, double t_lo,
                     double t_hi, const Grid2D& grid, const CutoffSpec& cutoff,
                     const QuadratureSpec& qspec, int jobs);

SampledField apply_T(const PhaseParams& params, double lambda, const SampledLine& f,
                     const Grid2D& grid, const CutoffSpec& cutoff, const QuadratureSpec& qspec,
                     int jobs = -1);

/// Adjoint action: T* g (t) = iint exp(-i lambda S(u,v,t)) psi(u,v,t) g(u,v) du dv
/// as a midpoint Riemann sum over the field's grid, evaluated at each node of
/// t_axis. Sets *resolution_warning when the grid fails the lambda guard.
SampledLine apply_T_star(const PhaseParams& params, double lambda, const SampledField& g,
                         const Axis& t_axis, const CutoffSpec& cutoff, int jobs = -1,
                         bool* resolution_warning = nullptr);

/// Evaluates T* g at an arbitrary t (same Riemann sum as apply_T_star).
std::complex<double> t_star_at(const PhaseParams& params, double lambda, const SampledField& g,
                               double t, const CutoffSpec& cutoff);

/// TT* kernel K(u,v,x,y) = int exp(i lambda [(x^m-u^m) t^k + (y^n-v^n) t^l])
/// psi(u,v,t) psi(x,y,t) dt.
QuadResult kernel_K(const PhaseParams& params, double lambda, double u, double v, double x,
                    double y, const CutoffSpec& cutoff, const QuadratureSpec& qspec,
                    CutoffMode mode = CutoffMode::psi_pair);

/// Kernel values for all node pairs of one (lambda, grid) context. Only the
/// canonical half is stored; the swapped pair is the complex conjugate.
/// Reads are concurrent; misses take the exclusive lock to insert.
class KernelCache {
public:
    KernelCache(const PhaseParams& params, double lambda, Grid2D grid, const CutoffSpec& cutoff,
                const QuadratureSpec& qspec);

    /// K(u_a, v_b, x_i, y_j) on the bound grid.
    std::complex<double> at(std::size_t a, std::size_t b, std::size_t i, std::size_t j);

    /// Bulk-computes every canonical pair in parallel.
    void prefill(int jobs = -1);

    bool all_converged() const { return all_converged_; }
    std::size_t stored() const { return map_.size(); }
    const Grid2D& grid() const { return grid_; }

private:
    std::uint64_t canonical_key(std::size_t p, std::size_t r, bool& swapped) const;
    std::complex<double> compute(std::size_t p, std::size_t r, bool& ok) const;

    PhaseParams params_;
    double lambda_;
    Grid2D grid_;
    CutoffSpec cutoff_;
    QuadratureSpec qspec_;
    std::unordered_map<std::uint64_t, std::complex<double>> map_;
    mutable std::shared_mutex mutex_;
    bool all_converged_ = true;
};

/// T_K g (x,y) = iint K(u,v,x,y) g(u,v) du dv as a Riemann contraction over
/// the field's grid. Kernel values come from the cache (a local one is made
/// when none is supplied). Requires nx*ny <= 4096: the kernel set is dense.
SampledField apply_TK(const PhaseParams& params, double lambda, const SampledField& g,
                      const CutoffSpec& cutoff, const QuadratureSpec& qspec,
                      KernelCache* cache = nullptr, int jobs = -1,
                      bool* resolution_warning = nullptr);

/// Fully discrete sampled pair for the ascent estimator and small dense
/// studies: E[(i,j),r] = psi(x_i,y_j,t_r) exp(i lambda S(x_i,y_j,t_r)),
/// forward (Tf)(i,j) = sum_r ht E f_r, adjoint (T*G)(r) = sum_ij hx hy
/// conj(E) G. Forward and adjoint are exact matrix adjoints with respect to
/// the weighted inner products, which makes the ascent objective provably
/// nondecreasing.
class DiscreteOperator {
public:
    DiscreteOperator(const PhaseParams& params, double lambda, const GridSpec& spec,
                     const CutoffSpec& cutoff, int jobs = -1);

    const Grid2D& grid() const { return grid_; }
    const Axis& t_axis() const { return t_; }
    bool resolution_warning() const { return resolution_warning_; }

    void forward(const std::complex<double>* f, std::complex<double>* field) const;
    void adjoint(const std::complex<double>* field, std::complex<double>* f) const;
    std::complex<double> entry(std::size_t i, std::size_t j, std::size_t r) const {
        return e_[(i * grid_.y.size() + j) * t_.size() + r];
    }

private:
    Grid2D grid_;
    Axis t_;
    std::vector<std::complex<double>> e_;
    int jobs_;
    bool resolution_warning_ = false;
};

}  // namespace oscillab

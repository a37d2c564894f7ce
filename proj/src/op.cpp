#include "oscillab/op.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace oscillab {

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double max_weight(const Axis& a) {
    double m = 0.0;
    for (double w : a.weight) m = std::max(m, w);
    return m;
}

}  // namespace

bool resolution_guard_ok(const PhaseParams& params, double lambda, const Grid2D& grid) {
    // amplitude vanishes outside |u|,|v| <= 1, so the gradient bound is taken there
    const double u_max = std::min(max_abs(grid.x.node), 1.0);
    const double v_max = std::min(max_abs(grid.y.node), 1.0);
    const double gx = params.m * ipow(u_max, params.m - 1);
    const double gy = params.n * ipow(v_max, params.n - 1);
    return lambda * max_weight(grid.x) * gx <= 0.25 && lambda * max_weight(grid.y) * gy <= 0.25;
}

SampledField apply_T(const PhaseParams& params, double lambda,
                     const std::function<std::complex<double>(double)>& f, double t_lo,
                     double t_hi, const Grid2D& grid, const CutoffSpec& cutoff,
                     const QuadratureSpec& qspec, int jobs) {
    return apply_T<const std::function<std::complex<double>(double)>&>(params, lambda, f, t_lo,
                                                                       t_hi, grid, cutoff, qspec,
                                                                       jobs);
}

SampledField apply_T(const PhaseParams& params, double lambda, const SampledLine& f,
                     const Grid2D& grid, const CutoffSpec& cutoff, const QuadratureSpec& qspec,
                     int jobs) {
    const double h = f.t.weight.empty() ? 0.0 : f.t.weight.front();
    const double t_lo = f.t.node.empty() ? -1.0 : f.t.node.front() - 0.5 * h;
    const double t_hi = f.t.node.empty() ? 1.0 : f.t.node.back() + 0.5 * h;
    auto fn = [&f](double t) { return cubic_interp(f, t); };
    return apply_T(params, lambda, fn, std::max(t_lo, -1.0), std::min(t_hi, 1.0), grid, cutoff,
                   qspec, jobs);
}

SampledLine apply_T_star(const PhaseParams& params, double lambda, const SampledField& g,
                         const Axis& t_axis, const CutoffSpec& cutoff, int jobs,
                         bool* resolution_warning) {
    for (const auto& v : g.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("apply_T_star: non-finite input field");
    if (resolution_warning) *resolution_warning = !resolution_guard_ok(params, lambda, g.grid);

    SampledLine line(t_axis);
    parallel_for(
        static_cast<std::int64_t>(t_axis.size()),
        [&](std::int64_t r) {
            line.values[r] = t_star_at(params, lambda, g, t_axis.node[r], cutoff);
        },
        jobs, 16);
    return line;
}

std::complex<double> t_star_at(const PhaseParams& params, double lambda, const SampledField& g,
                               double t, const CutoffSpec& cutoff) {
    const Axis& ax = g.grid.x;
    const Axis& ay = g.grid.y;
    const double tk = ipow(t, params.k);
    const double tl = ipow(t, params.l);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t a = 0; a < ax.size(); ++a) {
        const double u = ax.node[a];
        const double um_tk = ipow(u, params.m) * tk;
        const double wu = ax.weight[a];
        std::complex<double> row{0.0, 0.0};
        for (std::size_t b = 0; b < ay.size(); ++b) {
            const double v = ay.node[b];
            const double amp = cutoff.psi(u, v, t);
            if (amp == 0.0) continue;
            const double ph = -lambda * (um_tk + ipow(v, params.n) * tl);
            row += (amp * ay.weight[b]) * std::polar(1.0, ph) * g.at(a, b);
        }
        sum += wu * row;
    }
    return sum;
}

QuadResult kernel_K(const PhaseParams& params, double lambda, double u, double v, double x,
                    double y, const CutoffSpec& cutoff, const QuadratureSpec& qspec,
                    CutoffMode mode) {
    const double d1 = ipow(x, params.m) - ipow(u, params.m);
    const double d2 = ipow(y, params.n) - ipow(v, params.n);
    const int k = params.k, l = params.l;
    auto phase = [d1, d2, k, l](double t) { return d1 * ipow(t, k) + d2 * ipow(t, l); };
    if (mode == CutoffMode::unit_box) {
        auto amp = [](double) -> std::complex<double> { return {1.0, 0.0}; };
        return integrate_oscillatory(phase, amp, -1.0, 1.0, lambda, qspec);
    }
    auto amp = [&](double t) -> std::complex<double> {
        return cutoff.psi(u, v, t) * cutoff.psi(x, y, t);
    };
    return integrate_oscillatory(phase, amp, -1.0, 1.0, lambda, qspec);
}

KernelCache::KernelCache(const PhaseParams& params, double lambda, Grid2D grid,
                         const CutoffSpec& cutoff, const QuadratureSpec& qspec)
    : params_(params), lambda_(lambda), grid_(std::move(grid)), cutoff_(cutoff), qspec_(qspec) {}

std::uint64_t KernelCache::canonical_key(std::size_t p, std::size_t r, bool& swapped) const {
    swapped = p > r;
    const std::uint64_t lo = swapped ? r : p;
    const std::uint64_t hi = swapped ? p : r;
    return lo * static_cast<std::uint64_t>(grid_.size()) + hi;
}

std::complex<double> KernelCache::compute(std::size_t p, std::size_t r, bool& ok) const {
    const std::size_t ny = grid_.y.size();
    const double u = grid_.x.node[p / ny], v = grid_.y.node[p % ny];
    const double x = grid_.x.node[r / ny], y = grid_.y.node[r % ny];
    QuadResult q = kernel_K(params_, lambda_, u, v, x, y, cutoff_, qspec_);
    ok = q.converged;
    return q.value;
}

std::complex<double> KernelCache::at(std::size_t a, std::size_t b, std::size_t i,
                                     std::size_t j) {
    const std::size_t ny = grid_.y.size();
    const std::size_t p = a * ny + b;
    const std::size_t r = i * ny + j;
    bool swapped = false;
    const std::uint64_t key = canonical_key(p, r, swapped);
    {
        std::shared_lock lock(mutex_);
        auto it = map_.find(key);
        if (it != map_.end()) return swapped ? std::conj(it->second) : it->second;
    }
    bool ok = true;
    const std::complex<double> value =
        swapped ? compute(r, p, ok) : compute(p, r, ok);
    {
        std::unique_lock lock(mutex_);
        map_.emplace(key, value);
        if (!ok) all_converged_ = false;
    }
    return swapped ? std::conj(value) : value;
}

void KernelCache::prefill(int jobs) {
    const std::size_t nn = grid_.size();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(nn * (nn + 1) / 2);
    for (std::size_t p = 0; p < nn; ++p)
        for (std::size_t r = p; r < nn; ++r)
            pairs.emplace_back(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(r));

    std::vector<std::complex<double>> values(pairs.size());
    std::vector<std::uint8_t> ok(pairs.size(), 1);
    parallel_for(
        static_cast<std::int64_t>(pairs.size()),
        [&](std::int64_t t) {
            bool fine = true;
            values[t] = compute(pairs[t].first, pairs[t].second, fine);
            ok[t] = fine ? 1 : 0;
        },
        jobs);

    std::unique_lock lock(mutex_);
    map_.reserve(pairs.size());
    for (std::size_t t = 0; t < pairs.size(); ++t) {
        map_.emplace(static_cast<std::uint64_t>(pairs[t].first) * nn + pairs[t].second,
                     values[t]);
        if (!ok[t]) all_converged_ = false;
    }
}

SampledField apply_TK(const PhaseParams& params, double lambda, const SampledField& g,
                      const CutoffSpec& cutoff, const QuadratureSpec& qspec, KernelCache* cache,
                      int jobs, bool* resolution_warning) {
    if (g.grid.size() > 4096)
        throw std::invalid_argument("apply_TK: grid too large for dense kernel work (nx*ny <= 4096)");
    if (resolution_warning) *resolution_warning = !resolution_guard_ok(params, lambda, g.grid);

    std::unique_ptr<KernelCache> local;
    if (!cache) {
        local = std::make_unique<KernelCache>(params, lambda, g.grid, cutoff, qspec);
        cache = local.get();
    }
    cache->prefill(jobs);

    const std::size_t ny = g.grid.y.size();
    SampledField out(g.grid);
    parallel_for(
        static_cast<std::int64_t>(g.grid.size()),
        [&](std::int64_t idx) {
            const std::size_t i = static_cast<std::size_t>(idx) / ny;
            const std::size_t j = static_cast<std::size_t>(idx) % ny;
            std::complex<double> sum{0.0, 0.0};
            for (std::size_t a = 0; a < g.grid.x.size(); ++a) {
                const double wa = g.grid.x.weight[a];
                for (std::size_t b = 0; b < ny; ++b) {
                    const std::complex<double> gv = g.at(a, b);
                    if (gv == std::complex<double>(0.0, 0.0)) continue;
                    sum += cache->at(a, b, i, j) * gv * (wa * g.grid.y.weight[b]);
                }
            }
            out.values[idx] = sum;
        },
        jobs);
    return out;
}

DiscreteOperator::DiscreteOperator(const PhaseParams& params, double lambda,
                                   const GridSpec& spec, const CutoffSpec& cutoff, int jobs)
    : jobs_(jobs) {
    spec.validate();
    grid_ = Grid2D::from_spec(spec);
    t_ = Axis::uniform(spec.t_lo, spec.t_hi, spec.nt);
    resolution_warning_ = !resolution_guard_ok(params, lambda, grid_);

    const std::size_t ny = grid_.y.size();
    const std::size_t nt = t_.size();
    e_.resize(grid_.size() * nt);
    parallel_for(
        static_cast<std::int64_t>(grid_.size()),
        [&](std::int64_t idx) {
            const std::size_t i = static_cast<std::size_t>(idx) / ny;
            const std::size_t j = static_cast<std::size_t>(idx) % ny;
            const double x = grid_.x.node[i], y = grid_.y.node[j];
            const double xm = ipow(x, params.m), yn = ipow(y, params.n);
            for (std::size_t r = 0; r < nt; ++r) {
                const double t = t_.node[r];
                const double amp = cutoff.psi(x, y, t);
                const double ph = lambda * (xm * ipow(t, params.k) + yn * ipow(t, params.l));
                e_[idx * nt + r] = amp == 0.0 ? std::complex<double>(0.0, 0.0)
                                              : amp * std::polar(1.0, ph);
            }
        },
        jobs);
}

void DiscreteOperator::forward(const std::complex<double>* f, std::complex<double>* field) const {
    const std::size_t nt = t_.size();
    const double ht = t_.weight.front();
    parallel_for(
        static_cast<std::int64_t>(grid_.size()),
        [&](std::int64_t idx) {
            std::complex<double> sum{0.0, 0.0};
            const std::complex<double>* row = &e_[idx * nt];
            for (std::size_t r = 0; r < nt; ++r) sum += row[r] * f[r];
            field[idx] = ht * sum;
        },
        jobs_, 8);
}

void DiscreteOperator::adjoint(const std::complex<double>* field, std::complex<double>* f) const {
    const std::size_t nt = t_.size();
    const double hxy = grid_.x.weight.front() * grid_.y.weight.front();
    parallel_for(
        static_cast<std::int64_t>(nt),
        [&](std::int64_t r) {
            std::complex<double> sum{0.0, 0.0};
            for (std::size_t idx = 0; idx < grid_.size(); ++idx)
                sum += std::conj(e_[idx * nt + r]) * field[idx];
            f[r] = hxy * sum;
        },
        jobs_, 8);
}

}  // namespace oscillab

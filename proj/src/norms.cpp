#include "oscillab/norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "oscillab/rng.hpp"

namespace oscillab {

double lp_norm(const SampledField& field, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : field.values) m = std::max(m, std::abs(v));
        return m;
    }
    if (p < 1.0) throw std::invalid_argument("lp_norm: requires p >= 1");
    const std::size_t ny = field.grid.y.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < field.grid.x.size(); ++i) {
        const double wx = field.grid.x.weight[i];
        for (std::size_t j = 0; j < ny; ++j) {
            const double a = std::abs(field.at(i, j));
            if (a == 0.0) continue;
            sum += std::pow(a, p) * wx * field.grid.y.weight[j];
        }
    }
    return std::pow(sum, 1.0 / p);
}

double l2_norm(const SampledLine& line) {
    double sum = 0.0;
    for (std::size_t r = 0; r < line.size(); ++r) sum += std::norm(line.values[r]) * line.t.weight[r];
    return std::sqrt(sum);
}

WitnessResult witness_ratio_full(const PhaseParams& params, double lambda, double p,
                                 const CutoffSpec& cutoff, const QuadratureSpec& qspec,
                                 const WitnessOptions& opt, int jobs) {
    if (p < 1.0) throw std::invalid_argument("witness_ratio: requires p >= 1");
    if (opt.cells_per_block < 8)
        throw std::invalid_argument("witness_ratio: needs >= 8 cells inside the central box");

    const double mag = std::fabs(lambda);
    const double sx = mag > 1.0 ? std::pow(mag, -1.0 / params.m) : 1.0;
    const double sy = mag > 1.0 ? std::pow(mag, -1.0 / params.n) : 1.0;
    Grid2D grid;
    grid.x = Axis::graded(sx, opt.extent, opt.cells_per_block);
    grid.y = Axis::graded(sy, opt.extent, opt.cells_per_block);

    // f = chi_[0,1] handled as an exact function: integrate over [0,1] only
    auto f = [](double) -> std::complex<double> { return {1.0, 0.0}; };
    SampledField field = apply_T(params, lambda, f, 0.0, 1.0, grid, cutoff, qspec, jobs);

    WitnessResult out;
    out.estimate.kind = EstimateKind::lower_witness;
    out.estimate.iterations = 1;
    out.estimate.residual = 0.0;
    out.estimate.converged = field.all_converged();
    out.estimate.value = lp_norm(field, p);  // ||chi||_2 = 1
    if (opt.keep_field) out.field = std::move(field);
    return out;
}

NormEstimate witness_ratio(const PhaseParams& params, double lambda, double p,
                           const CutoffSpec& cutoff, const QuadratureSpec& qspec,
                           const WitnessOptions& opt, int jobs) {
    return witness_ratio_full(params, lambda, p, cutoff, qspec, opt, jobs).estimate;
}

namespace {

double field_lp(const std::vector<std::complex<double>>& v, const Grid2D& grid, double p) {
    SampledField tmp;
    tmp.grid = grid;
    tmp.values = v;
    tmp.flags.assign(v.size(), 0);
    return lp_norm(tmp, p);
}

}  // namespace

NormEstimate ascent_norm(const PhaseParams& params, double lambda, int p, const GridSpec& gspec,
                         const CutoffSpec& cutoff, const AscentOptions& opt, int jobs,
                         std::vector<double>* objective_trace) {
    if (p < 2 || p % 2 != 0)
        throw std::invalid_argument("ascent_norm: requires even p >= 2");

    DiscreteOperator op(params, lambda, gspec, cutoff, jobs);
    const std::size_t nt = op.t_axis().size();
    const std::size_t nn = op.grid().size();
    const double ht = op.t_axis().weight.front();

    NormEstimate est;
    est.kind = EstimateKind::ascent_stationary;
    est.resolution_warning = op.resolution_warning();

    std::vector<std::complex<double>> f(nt), field(nn), weighted(nn);

    auto normalize_f = [&]() {
        double sum = 0.0;
        for (const auto& c : f) sum += std::norm(c);
        const double norm = std::sqrt(sum * ht);
        if (norm == 0.0) return false;
        for (auto& c : f) c /= norm;
        return true;
    };

    Rng rng(opt.seed);
    int restarts = 0;
    if (opt.start) {
        if (opt.start->size() != nt)
            throw std::invalid_argument("ascent_norm: start vector size must match the t axis");
        f = *opt.start;
    } else {
        for (auto& c : f) c = rng.complex_uniform();
    }

    double objective = 0.0;
    bool have_objective = false;
    for (int iter = 0; iter < opt.max_iter; ++iter) {
        if (!normalize_f()) {
            if (++restarts > opt.max_restarts) {
                est.converged = false;
                break;
            }
            for (auto& c : f) c = rng.complex_uniform();
            have_objective = false;
            if (objective_trace) objective_trace->clear();
            --iter;
            continue;
        }
        op.forward(f.data(), field.data());
        const double obj = field_lp(field, op.grid(), p);
        if (obj == 0.0 || !std::isfinite(obj)) {
            // degenerate direction: T f vanished; reseed
            f.assign(nt, {0.0, 0.0});
            continue;
        }
        if (objective_trace) objective_trace->push_back(obj);
        if (have_objective) {
            if (obj < objective - 1e-12 * std::max(1.0, objective)) est.monotone_violation = true;
            const double rel = (obj - objective) / std::max(objective, 1e-300);
            est.iterations = iter + 1;
            est.residual = std::fabs(rel);
            if (rel < opt.tol && rel > -1e-12) {
                objective = std::max(objective, obj);
                est.converged = true;
                break;
            }
        }
        objective = std::max(objective, obj);
        have_objective = true;
        est.iterations = iter + 1;
        if (iter + 1 == opt.max_iter) est.converged = false;

        // ascent step: f <- T*(|Tf|^(p-2) Tf)
        for (std::size_t idx = 0; idx < nn; ++idx) {
            const double a = std::abs(field[idx]);
            weighted[idx] = (p == 2 || a == 0.0) ? field[idx]
                                                 : std::pow(a, p - 2) * field[idx];
        }
        op.adjoint(weighted.data(), f.data());
    }

    est.value = objective;
    return est;
}

}  // namespace oscillab

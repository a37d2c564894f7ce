#include "oscillab/decay.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "oscillab/op.hpp"
#include "oscillab/parallel.hpp"
#include "oscillab/rng.hpp"

namespace oscillab {

std::string to_string(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::witness: return "witness";
        case EstimatorKind::ascent: return "ascent";
        case EstimatorKind::constant_test: return "constant";
    }
    return "unknown";
}

void DecaySweepConfig::validate() const {
    if (lambda_min < 1.0) throw std::invalid_argument("sweep: lambda_min must be >= 1");
    if (!(lambda_max > lambda_min))
        throw std::invalid_argument("sweep: lambda_max must exceed lambda_min");
    if (num_lambdas < 4) throw std::invalid_argument("sweep: needs at least 4 lambdas");
    if (p < 1.0) throw std::invalid_argument("sweep: p must be >= 1");
    quad.validate();
}

std::vector<double> DecaySweepConfig::schedule() const {
    std::vector<double> lambdas(num_lambdas);
    const double ratio = std::log(lambda_max / lambda_min);
    for (int i = 0; i < num_lambdas; ++i)
        lambdas[i] = lambda_min * std::exp(ratio * i / (num_lambdas - 1));
    return lambdas;
}

SweepResult run_sweep(const DecaySweepConfig& config) {
    config.validate();
    SweepResult out;
    out.estimator = config.estimator;

    const std::vector<double> lambdas = config.schedule();
    for (int i = 0; i < config.num_lambdas; ++i) {
        SweepPoint pt;
        pt.lambda = lambdas[i];
        try {
            switch (config.estimator) {
                case EstimatorKind::witness: {
                    NormEstimate est = witness_ratio(config.params, pt.lambda, config.p,
                                                     CutoffSpec{}, config.quad, config.witness,
                                                     config.jobs);
                    pt.estimate = est.value;
                    pt.converged = est.converged;
                    break;
                }
                case EstimatorKind::ascent: {
                    AscentOptions aopt;
                    aopt.seed = config.seed + 0x9e37ULL * static_cast<std::uint64_t>(i);
                    NormEstimate est = ascent_norm(config.params, pt.lambda, config.ascent_p,
                                                   config.grid, CutoffSpec{}, aopt, config.jobs);
                    pt.estimate = est.value;
                    pt.converged = est.converged;
                    break;
                }
                case EstimatorKind::constant_test:
                    pt.estimate = config.constant_value;
                    break;
            }
        } catch (const std::exception&) {
            pt.converged = false;
            pt.estimate = 0.0;
        }
        if (!pt.converged || !(pt.estimate > 0.0) || !std::isfinite(pt.estimate)) ++out.failures;
        out.points.push_back(pt);
    }
    if (3 * out.failures > config.num_lambdas)
        throw std::runtime_error("run_sweep: more than a third of the sweep points failed");
    return out;
}

DecayFitResult fit_exponent(const std::vector<SweepPoint>& table) {
    if (table.size() < 3) throw std::invalid_argument("fit_exponent: needs >= 3 points");
    for (const auto& pt : table)
        if (!(pt.estimate > 0.0) || !std::isfinite(pt.estimate))
            throw std::invalid_argument("fit_exponent: estimates must be positive and finite");

    const std::size_t n = table.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = std::log(table[i].lambda);
        ly[i] = std::log(table[i].estimate);
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_exponent: degenerate lambda schedule");

    DecayFitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy <= 1e-300 ? 1.0 : std::max(0.0, 1.0 - ss_res / syy);
    fit.table = table;
    return fit;
}

TheoryReport compare_with_theory(const DecayFitResult& fit, const PhaseParams& params,
                                 double tol_slope) {
    TheoryReport rep;
    rep.delta_pred = params.delta_pred;
    rep.delta_low = params.delta_low(params.p());
    rep.slope_emp = -fit.slope;
    rep.r_squared = fit.r_squared;
    rep.tol_slope = tol_slope;
    rep.sharp = params.sharp;
    rep.pass_at_least_pred = rep.slope_emp >= rep.delta_pred - tol_slope;
    rep.pass_at_most_low = rep.slope_emp <= rep.delta_low + tol_slope;
    if (rep.sharp) rep.pass_sharp = std::fabs(rep.slope_emp - rep.delta_pred) <= tol_slope;
    return rep;
}

VdcReport vdc_check(const PhaseParams& params, const std::vector<double>& lambdas, int samples,
                    const CutoffSpec& cutoff, const QuadratureSpec& qspec, std::uint64_t seed,
                    int jobs) {
    if (samples < 1) throw std::invalid_argument("vdc_check: samples must be >= 1");
    VdcReport rep;
    rep.samples = samples;

    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        const double lambda = lambdas[li];
        // one deterministic tuple set per lambda
        std::vector<std::array<double, 4>> tuples(samples);
        Rng rng(seed + 0x51ab5ULL * li);
        for (int s = 0; s < samples; ++s) {
            double x, y, u, v;
            rng.disc_point(1.0, x, y);
            rng.disc_point(1.0, u, v);
            tuples[s] = {x, y, u, v};
        }

        std::vector<double> ratios(samples, 0.0);
        std::vector<std::uint8_t> ok(samples, 1);
        parallel_for(
            samples,
            [&](std::int64_t s) {
                const auto& tp = tuples[s];
                QuadResult K =
                    kernel_K(params, lambda, tp[2], tp[3], tp[0], tp[1], cutoff, qspec);
                if (!K.converged) {
                    ok[s] = 0;
                    return;
                }
                const double d1 = ipow(tp[0], params.m) - ipow(tp[2], params.m);
                ratios[s] =
                    std::abs(K.value) * std::pow(1.0 + lambda * std::fabs(d1), 1.0 / params.k);
            },
            jobs);

        VdcReport::Row row;
        row.lambda = lambda;
        std::vector<double> good;
        good.reserve(samples);
        for (int s = 0; s < samples; ++s) {
            if (ok[s]) good.push_back(ratios[s]);
            else ++row.failures;
        }
        if (!good.empty()) {
            std::sort(good.begin(), good.end());
            row.max_r = good.back();
            row.q50 = good[good.size() / 2];
            row.q90 = good[std::min(good.size() - 1, (9 * good.size()) / 10)];
        }
        rep.rows.push_back(row);
    }

    if (!rep.rows.empty())
        rep.bounded = rep.rows.back().max_r <= 2.0 * rep.rows.front().max_r;
    return rep;
}

}  // namespace oscillab

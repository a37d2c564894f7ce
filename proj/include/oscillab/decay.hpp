#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oscillab/norms.hpp"
#include "oscillab/phase.hpp"

namespace oscillab {

enum class EstimatorKind { witness, ascent, constant_test };

std::string to_string(EstimatorKind kind);

/// One lambda sweep of a norm estimator on a geometric schedule.
struct DecaySweepConfig {
    PhaseParams params;
    double p;
    double lambda_min = 64.0;     // 2^6
    double lambda_max = 16384.0;  // 2^14
    int num_lambdas = 9;
    EstimatorKind estimator = EstimatorKind::witness;
    WitnessOptions witness;
    GridSpec grid;       // ascent estimator only
    int ascent_p = 6;    // even p used by the ascent objective
    QuadratureSpec quad;
    std::uint64_t seed = 1;
    int jobs = -1;
    double constant_value = 1.0;  // constant_test hook

    DecaySweepConfig(PhaseParams pp, double p_exp) : params(pp), p(p_exp) {}
    void validate() const;
    std::vector<double> schedule() const;
};

struct SweepPoint {
    double lambda = 0.0;
    double estimate = 0.0;
    bool converged = true;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    int failures = 0;
    EstimatorKind estimator = EstimatorKind::witness;
};

/// Runs the estimator at every lambda of the schedule. Throws only when
/// more than a third of the points fail; individual failures are recorded
/// on the points.
SweepResult run_sweep(const DecaySweepConfig& config);

/// Least-squares fit of ln(estimate) against ln(lambda).
struct DecayFitResult {
    double slope = 0.0;      // empirical -delta
    double intercept = 0.0;  // ln of the constant
    double r_squared = 1.0;
    std::vector<SweepPoint> table;
};

DecayFitResult fit_exponent(const std::vector<SweepPoint>& table);

/// Comparison of a fitted sweep against the predicted exponents. In the
/// sharp regime (l <= n) the check is two-sided; otherwise both one-sided
/// checks are reported and no equality is asserted.
struct TheoryReport {
    double delta_pred = 0.0;
    double delta_low = 0.0;
    double slope_emp = 0.0;  // -slope of the fit
    double r_squared = 0.0;
    double tol_slope = 0.0;
    bool sharp = false;
    bool pass_sharp = false;        // |slope_emp - delta_pred| <= tol (sharp case only)
    bool pass_at_least_pred = false;  // slope_emp >= delta_pred - tol
    bool pass_at_most_low = false;    // slope_emp <= delta_low + tol
};

TheoryReport compare_with_theory(const DecayFitResult& fit, const PhaseParams& params,
                                 double tol_slope);

/// Kernel-bound ratio statistics: R = |K| (1 + lambda |x^m - u^m|)^(1/k)
/// over random tuples in the cutoff support, for each lambda. The bound
/// holds when max R shows no growth trend across the lambda list.
struct VdcReport {
    struct Row {
        double lambda = 0.0;
        double max_r = 0.0;
        double q50 = 0.0;
        double q90 = 0.0;
        int failures = 0;
    };
    std::vector<Row> rows;
    int samples = 0;
    bool bounded = false;  // max_r(last) <= 2 * max_r(first)
};

VdcReport vdc_check(const PhaseParams& params, const std::vector<double>& lambdas, int samples,
                    const CutoffSpec& cutoff, const QuadratureSpec& qspec, std::uint64_t seed,
                    int jobs = -1);

}  // namespace oscillab

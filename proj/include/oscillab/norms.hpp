#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "oscillab/grid.hpp"
#include "oscillab/op.hpp"
#include "oscillab/phase.hpp"
#include "oscillab/quad.hpp"

namespace oscillab {

/// Weighted grid realization of || . ||_{L^p(R^2)}; p = inf gives the max
/// modulus.
double lp_norm(const SampledField& field, double p);

/// L2 norm of line samples with the axis weights.
double l2_norm(const SampledLine& line);

enum class EstimateKind { lower_witness, ascent_stationary };

/// Lower-bound estimate of ||T_lambda||_{L2 -> Lp}. Both estimators report
/// certified directions, never upper bounds.
struct NormEstimate {
    double value = 0.0;
    EstimateKind kind = EstimateKind::lower_witness;
    int iterations = 0;
    double residual = 0.0;
    bool converged = true;
    bool resolution_warning = false;
    bool monotone_violation = false;  // ascent only; objective must not decrease
};

/// Witness estimator: ||T_lambda chi_[0,1]||_p / ||chi_[0,1]||_2 on a grid
/// graded toward the box |x| <~ lambda^(-1/m), |y| <~ lambda^(-1/n) where
/// the test-function mass concentrates.
struct WitnessOptions {
    int cells_per_block = 12;  // >= 8 cells per axis inside the central box
    double extent = 1.25;
    bool keep_field = false;
};

struct WitnessResult {
    NormEstimate estimate;
    SampledField field;  // populated when keep_field is set
};

NormEstimate witness_ratio(const PhaseParams& params, double lambda, double p,
                           const CutoffSpec& cutoff, const QuadratureSpec& qspec,
                           const WitnessOptions& opt = {}, int jobs = -1);

WitnessResult witness_ratio_full(const PhaseParams& params, double lambda, double p,
                                 const CutoffSpec& cutoff, const QuadratureSpec& qspec,
                                 const WitnessOptions& opt = {}, int jobs = -1);

/// Ascent estimator on the discretized operator: maximize ||T f||_p over
/// ||f||_2 = 1 by the fixed-point step f <- T*(|Tf|^(p-2) Tf), renormalized.
/// The objective sequence is nondecreasing (checked, slack 1e-12); for
/// p = 2 this is power iteration on T*T. Requires even p.
struct AscentOptions {
    int max_iter = 100;
    double tol = 1e-8;             // relative objective increase to stop
    int max_restarts = 3;          // reseeds on a degenerate start (Tf = 0)
    std::uint64_t seed = 0x5eedULL;
    std::optional<std::vector<std::complex<double>>> start;  // values on the t axis
};

NormEstimate ascent_norm(const PhaseParams& params, double lambda, int p, const GridSpec& grid,
                         const CutoffSpec& cutoff, const AscentOptions& opt = {}, int jobs = -1,
                         std::vector<double>* objective_trace = nullptr);

}  // namespace oscillab

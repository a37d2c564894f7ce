#pragma once

#include <complex>
#include <functional>

#include "oscillab/grid.hpp"
#include "oscillab/op.hpp"
#include "oscillab/phase.hpp"
#include "oscillab/quad.hpp"

namespace oscillab::serial_ref {

/// Plain-loop reference versions of the parallel kernels. They share the
/// quadrature engine and the formulas but none of the scheduling, caching
/// or blocking; tests compare the parallel results against these and the
/// benchmark times them head to head.

SampledField apply_T(const PhaseParams& params, double lambda,
                     const std::function<std::complex<double>(double)>& f, double t_lo,
                     double t_hi, const Grid2D& grid, const CutoffSpec& cutoff,
                     const QuadratureSpec& qspec);

SampledLine apply_T_star(const PhaseParams& params, double lambda, const SampledField& g,
                         const Axis& t_axis, const CutoffSpec& cutoff);

SampledField apply_TK(const PhaseParams& params, double lambda, const SampledField& g,
                      const CutoffSpec& cutoff, const QuadratureSpec& qspec);

}  // namespace oscillab::serial_ref

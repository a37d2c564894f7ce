#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "oscillab/decay.hpp"
#include "oscillab/grid.hpp"
#include "oscillab/op.hpp"
#include "oscillab/phase.hpp"
#include "oscillab/quad.hpp"

namespace oscillab {

/// Gamma(z) by the Lanczos approximation (g = 7, 9 coefficients), with the
/// reflection formula for Re z < 1/2. Throws at the poles (nonpositive
/// integers). Relative error <= 1e-12 on the strip used here.
std::complex<double> complex_gamma(std::complex<double> z);

/// Interpolation parameter with its derived prefactor exp(alpha^2)/Gamma(alpha).
struct AlphaParam {
    std::complex<double> alpha;
    std::complex<double> prefactor;

    explicit AlphaParam(std::complex<double> a);
};

/// delta_alpha(s) = prefactor * s^(alpha-1) * zeta(s)^2 for s > 0, else 0.
/// The density form requires Re(alpha) > 0.
std::complex<double> delta_alpha_density(const AlphaParam& alpha, double s,
                                         const CutoffSpec& cutoff);

/// Fourier transform of the density: prefactor * int_0^inf e^{2 pi i s t}
/// s^(alpha-1) zeta(s)^2 ds. Requires Re(alpha) > 0.
QuadResult delta_alpha_fourier(const AlphaParam& alpha, double t, const CutoffSpec& cutoff,
                               const QuadratureSpec& spec = {});

/// Factorized kernel K^alpha(u,v,x,y) = K(u,v,x,y) *
/// delta_hat_alpha(lambda (x^m - u^m) / (2 pi)).
QuadResult kernel_K_alpha(const PhaseParams& params, double lambda, const AlphaParam& alpha,
                          double u, double v, double x, double y, const CutoffSpec& cutoff,
                          const QuadratureSpec& spec = {});

/// Matrix-free complex linear map with uniform cell measures on both sides.
struct LinearOperator {
    std::size_t rows = 0, cols = 0;
    double weight_out = 1.0, weight_in = 1.0;  // cell measures of the two L2 spaces
    std::function<void(const std::complex<double>*, std::complex<double>*)> apply;
    std::function<void(const std::complex<double>*, std::complex<double>*)> apply_adjoint;
};

struct PowerIterResult {
    double sigma = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Largest singular value (weighted operator norm) by power iteration on
/// M*M with a deterministic seeded start.
PowerIterResult largest_singular_value(const LinearOperator& op, int max_iter = 200,
                                       double tol = 1e-9, std::uint64_t seed = 7);

/// Discretization of T_K^alpha on a uniform grid, applied matrix-free
/// through the factorization: one fixed composite panel rule carries the
/// t-integral, so a matvec costs O(n_nodes * n_t) instead of touching all
/// n_nodes^2 kernel entries. entry() reproduces single matrix entries for
/// cross-checks.
class KernelAlphaOperator {
public:
    KernelAlphaOperator(const PhaseParams& params, double lambda, const AlphaParam& alpha,
                        const GridSpec& grid, const CutoffSpec& cutoff,
                        const QuadratureSpec& qspec, int jobs = -1);

    std::size_t dim() const { return nx_ * ny_; }
    double cell_measure() const { return hxy_; }
    std::size_t t_nodes() const { return nt_; }

    void apply(const std::complex<double>* g, std::complex<double>* out) const;
    void apply_adjoint(const std::complex<double>* f, std::complex<double>* out) const;

    /// K^alpha(u_a, v_b, x_i, y_j) without the cell measure.
    std::complex<double> entry(std::size_t a, std::size_t b, std::size_t i,
                               std::size_t j) const;

    LinearOperator as_linop() const;

private:
    std::size_t nx_, ny_, nt_;
    double hxy_;
    int jobs_;
    std::vector<double> wt_;                   // t-rule weights
    std::vector<std::complex<double>> u_;      // [a*nt + q] exp(i lambda u^m t^k)
    std::vector<std::complex<double>> vt_;     // [q*ny + b] exp(i lambda v^n t^l)
    std::vector<float> psi_;                   // [(a*nt + q)*ny + b]
    std::vector<std::complex<double>> d_;      // [i*nx + a] delta_hat factor
};

/// L2 -> L2 norm sweep of the discretized T_K^alpha at fixed alpha, with a
/// log-log slope fit against the predicted exponent 1/m + 1/max(n,l).
struct L2EndpointConfig {
    PhaseParams params;
    std::complex<double> alpha{1.0, 0.0};
    std::vector<double> lambdas;  // defaults to 2^4 .. 2^9
    GridSpec grid;
    QuadratureSpec quad;
    int max_iter = 300;
    double tol = 1e-8;
    std::uint64_t seed = 7;
    int jobs = -1;

    explicit L2EndpointConfig(PhaseParams p) : params(p) {
        grid.nx = grid.ny = 48;
        for (int e = 4; e <= 9; ++e) lambdas.push_back(std::ldexp(1.0, e));
    }
};

struct L2EndpointPoint {
    double lambda = 0.0;
    double norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct L2EndpointReport {
    std::vector<L2EndpointPoint> points;
    DecayFitResult fit;
    double target = 0.0;  // 1/m + 1/max(n,l)
    double tol = 0.0;     // 0.1 * target
    bool pass = false;
    bool all_converged = true;
};

L2EndpointReport l2_endpoint_check(const L2EndpointConfig& config);

}  // namespace oscillab

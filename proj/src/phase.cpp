#include "oscillab/phase.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace oscillab {

double ipow(double x, int e) {
    double result = 1.0;
    double base = x;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

PhaseParams::PhaseParams(int m_, int n_, int k_, int l_) : m(m_), n(n_), k(k_), l(l_) {
    if (m < 1 || n < 1 || k < 1 || l < 1)
        throw std::invalid_argument("PhaseParams: exponents must be positive integers");
    if (k <= l)
        throw std::invalid_argument(
            "PhaseParams: normalization requires k > l (swap the roles of t^k and t^l)");
    const long long mx = std::max(n, l);
    // delta_pred = (mx + m) / (2 (k+1) m mx)
    delta_num = mx + m;
    delta_den = 2LL * (k + 1) * m * mx;
    const long long g = std::gcd(delta_num, delta_den);
    delta_num /= g;
    delta_den /= g;
    delta_pred = static_cast<double>(delta_num) / static_cast<double>(delta_den);
    sharp = (l <= n);
}

double PhaseParams::delta_low(double p_exp) const {
    return (1.0 / p_exp) * (1.0 / m + 1.0 / n);
}

PredictedExponent predicted_exponent(const PhaseParams& params) {
    return {params.p(), params.delta_pred};
}

double lower_bound_exponent(const PhaseParams& params, double p_exp) {
    if (p_exp < 1.0) throw std::invalid_argument("lower_bound_exponent: p must be >= 1");
    return params.delta_low(p_exp);
}

double eval_phase(const PhaseParams& params, double x, double y, double t) {
    return ipow(x, params.m) * ipow(t, params.k) + ipow(y, params.n) * ipow(t, params.l);
}

double CutoffSpec::profile(double w) {
    if (w <= 0.0) return 1.0;
    if (w >= 1.0) return 0.0;
    // mollifier pair exp(-1/sqrt(.)): wider spectral spread than exp(-1/.),
    // which keeps the transform's pre-asymptotic bulge small
    const double a = std::exp(-1.0 / std::sqrt(1.0 - w));
    const double b = std::exp(-1.0 / std::sqrt(w));
    return a / (a + b);
}

double CutoffSpec::psi_radial(double r) const {
    return profile((r - psi_plateau) / (psi_support - psi_plateau));
}

double CutoffSpec::psi(double x, double y, double t) const {
    return psi_radial(std::sqrt(x * x + y * y + t * t));
}

double CutoffSpec::zeta(double s) const {
    return profile((std::fabs(s) - zeta_plateau) / (zeta_support - zeta_plateau));
}

double eval_cutoff(const CutoffSpec& spec, double x, double y, double t) {
    return spec.psi(x, y, t);
}

}  // namespace oscillab

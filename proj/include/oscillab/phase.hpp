#pragma once

#include <cstdint>

namespace oscillab {

/// x^e for integer e >= 0 by squaring; exact product tree, no pow().
double ipow(double x, int e);

/// Exponent quadruple (m,n,k,l) of the phase S(x,y,t) = x^m t^k + y^n t^l,
/// normalized so that k > l, together with the quantities derived from it:
/// the target Lebesgue index p = 2k+2, the predicted norm-decay exponent
///   delta_pred = (1/(2(k+1))) * (1/m + 1/max(n,l)),
/// and the witness lower-bound exponent delta_low(p) = (1/p)(1/m + 1/n).
/// delta_pred is carried as an exact reduced fraction so that equality
/// checks against reported values do not drift.
struct PhaseParams {
    int m, n, k, l;

    long long delta_num = 0;  // delta_pred = delta_num / delta_den, reduced
    long long delta_den = 1;
    double delta_pred = 0.0;
    bool sharp = false;  // l <= n: predicted and witness exponents coincide

    PhaseParams(int m_, int n_, int k_, int l_);

    int p() const { return 2 * k + 2; }
    double delta_low(double p_exp) const;  // (1/p)(1/m + 1/n)
};

struct PredictedExponent {
    int p;
    double delta;
};

/// Predicted (p, delta) pair for valid parameters (throws if k <= l).
PredictedExponent predicted_exponent(const PhaseParams& params);

/// Witness-side exponent (1/p)(1/m + 1/n); equals predicted delta when
/// l <= n and p = 2k+2.
double lower_bound_exponent(const PhaseParams& params, double p_exp);

/// S(x,y,t) = x^m t^k + y^n t^l.
double eval_phase(const PhaseParams& params, double x, double y, double t);

/// Smooth compactly supported cutoffs: a radial bump psi(x,y,t) equal to 1
/// on |(x,y,t)| <= 1/2 and 0 outside |(x,y,t)| <= 1, and a 1-D cutoff
/// zeta(s) equal to 1 for |s| <= 1 with support |s| <= 2. Both use the same
/// C^inf transition profile built from exp(-1/w); every derivative vanishes
/// at both ends of the transition.
struct CutoffSpec {
    double psi_plateau = 0.5;
    double psi_support = 1.0;
    double zeta_plateau = 1.0;
    double zeta_support = 2.0;

    /// C^inf step: 1 for w <= 0, 0 for w >= 1, strictly decreasing between.
    static double profile(double w);

    double psi(double x, double y, double t) const;
    double psi_radial(double r) const;
    double zeta(double s) const;
};

double eval_cutoff(const CutoffSpec& spec, double x, double y, double t);

}  // namespace oscillab

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "oscillab/phase.hpp"

namespace oscillab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Tolerances and limits for the adaptive panel quadrature.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_depth = 40;       // bisections per panel before giving up
    int rule_order = 15;      // 15-point panel rule with embedded 7-point estimate
    double cycles_per_panel = 3.75;  // split while lambda*dphi > 2*pi*this

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
        if (max_depth < 1) throw std::invalid_argument("QuadratureSpec: max_depth must be >= 1");
        if (rule_order < 3) throw std::invalid_argument("QuadratureSpec: rule order must be >= 3");
    }
};

struct QuadResult {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;    // accumulated panel error estimate
    long long evals = 0;   // integrand evaluations
    bool converged = true; // false when a panel hit the depth/panel limits
};

namespace detail {

// Gauss-Kronrod 7/15 pair on [-1,1]; nonnegative abscissae. The odd-index
// Kronrod nodes are the 7-point Gauss nodes.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kGK15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kG7Weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b;
    std::complex<double> integral;
    double error;        // |I15 - I7|
    double osc;          // |lambda| * sampled phase spread
    int depth;
    bool splittable;     // cleared once depth/length limits are hit
};

template <class Phase, class Amp>
Panel evaluate_panel(Phase& phase, Amp& amp, double a, double b, double lambda, int depth,
                     long long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::complex<double> sum15{0.0, 0.0};
    std::complex<double> sum7{0.0, 0.0};
    double phi_min = 0.0, phi_max = 0.0;
    bool first = true;
    for (int i = 0; i < 8; ++i) {
        const int reps = (i == 7) ? 1 : 2;
        for (int r = 0; r < reps; ++r) {
            const double x = (r == 0) ? c - h * kGK15Nodes[i] : c + h * kGK15Nodes[i];
            const double ph = phase(x);
            const std::complex<double> f =
                std::complex<double>(amp(x)) * std::polar(1.0, lambda * ph);
            ++evals;
            if (!std::isfinite(ph) || !std::isfinite(f.real()) || !std::isfinite(f.imag()))
                throw std::domain_error("integrate_oscillatory: non-finite integrand value");
            sum15 += kGK15Weights[i] * f;
            if (i % 2 == 1) sum7 += kG7Weights[i / 2] * f;
            if (first) {
                phi_min = phi_max = ph;
                first = false;
            } else {
                phi_min = std::min(phi_min, ph);
                phi_max = std::max(phi_max, ph);
            }
        }
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.integral = h * sum15;
    p.error = std::abs(h * (sum15 - sum7));
    p.osc = std::fabs(lambda) * (phi_max - phi_min);
    p.depth = depth;
    p.splittable = true;
    return p;
}

}  // namespace detail

/// Adaptive evaluation of int_a^b amp(t) exp(i lambda phase(t)) dt.
///
/// Panels are bisected globally, worst first, until the summed error
/// estimate of the 7/15 pair meets max(abs_tol, rel_tol*|I|) and no panel
/// spans more phase than the rule resolves (lambda * spread <= 2*pi *
/// cycles_per_panel). A panel that reaches max_depth is frozen and the
/// result is flagged unconverged. Works for lambda of either sign; lambda=0
/// degenerates to plain adaptive quadrature.
template <class Phase, class Amp>
QuadResult integrate_oscillatory(Phase&& phase, Amp&& amp, double a, double b, double lambda,
                                 const QuadratureSpec& spec = {}) {
    spec.validate();
    QuadResult out;
    if (a == b) return out;
    if (b < a) {
        out = integrate_oscillatory(phase, amp, b, a, lambda, spec);
        out.value = -out.value;
        return out;
    }

    const double osc_cap = kTwoPi * spec.cycles_per_panel;
    const std::size_t max_panels = std::size_t{1} << 20;
    const double min_len = (b - a) * 0x1.0p-52;

    // splitting priority: oversized oscillation first (scaled by length so
    // the widest oversized panel goes first), then the error estimate
    auto priority = [osc_cap](const detail::Panel& p) -> double {
        if (!p.splittable) return -1.0;
        if (p.osc > osc_cap) return 1e250 * (p.b - p.a);
        return p.error;
    };
    auto cmp = [&priority](const detail::Panel& p, const detail::Panel& q) {
        return priority(p) < priority(q);
    };

    std::vector<detail::Panel> heap;
    heap.push_back(detail::evaluate_panel(phase, amp, a, b, lambda, 0, out.evals));
    std::complex<double> total = heap.front().integral;
    double total_err = heap.front().error;
    bool any_frozen = false;

    while (true) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        detail::Panel top = heap.back();

        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        const bool osc_bad = top.splittable && top.osc > osc_cap;
        const bool err_bad = top.splittable && total_err > tol;
        if (!osc_bad && !err_bad) {
            std::push_heap(heap.begin(), heap.end(), cmp);
            break;
        }
        if (top.depth >= spec.max_depth || (top.b - top.a) < min_len ||
            heap.size() >= max_panels) {
            any_frozen = true;
            heap.back().splittable = false;
            std::push_heap(heap.begin(), heap.end(), cmp);
            if (heap.size() >= max_panels) break;
            continue;
        }
        heap.pop_back();
        const double mid = 0.5 * (top.a + top.b);
        detail::Panel left =
            detail::evaluate_panel(phase, amp, top.a, mid, lambda, top.depth + 1, out.evals);
        detail::Panel right =
            detail::evaluate_panel(phase, amp, mid, top.b, lambda, top.depth + 1, out.evals);
        total += left.integral + right.integral - top.integral;
        total_err += left.error + right.error - top.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), cmp);
    }

    // re-sum in interval order so the result does not depend on heap history
    std::sort(heap.begin(), heap.end(),
              [](const detail::Panel& p, const detail::Panel& q) { return p.a < q.a; });
    total = {0.0, 0.0};
    total_err = 0.0;
    for (const auto& p : heap) {
        total += p.integral;
        total_err += p.error;
    }

    out.value = total;
    out.error = total_err;
    out.converged = !any_frozen;
    return out;
}

/// int_0^inf exp(2*pi*i*s*t) s^(alpha-1) zeta(s)^2 ds, without the
/// exp(alpha^2)/Gamma(alpha) prefactor. Requires Re(alpha) > 0. The
/// endpoint singularity is removed on the plateau [0,1] by the substitution
/// s = u^(1/Re(alpha)), which makes the transformed integrand bounded.
QuadResult fourier_halfline(std::complex<double> alpha, const CutoffSpec& cutoff, double t,
                            const QuadratureSpec& spec = {});

}  // namespace oscillab

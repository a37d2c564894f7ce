#include "oscillab/quad.hpp"

#include <stdexcept>

namespace oscillab {

QuadResult fourier_halfline(std::complex<double> alpha, const CutoffSpec& cutoff, double t,
                            const QuadratureSpec& spec) {
    const double a = alpha.real();
    if (!(a > 0.0))
        throw std::domain_error("fourier_halfline: requires Re(alpha) > 0");

    const double lambda = kTwoPi * t;
    QuadResult head;

    // [0, 1]: zeta == 1 on the plateau, integrand s^(alpha-1) e^{2 pi i s t}.
    if (a >= 1.0) {
        auto amp = [&alpha](double s) -> std::complex<double> {
            if (s <= 0.0) return (alpha == std::complex<double>(1.0, 0.0))
                                     ? std::complex<double>(1.0, 0.0)
                                     : std::complex<double>(0.0, 0.0);
            return std::exp((alpha - 1.0) * std::log(s));
        };
        auto phase = [](double s) { return s; };
        head = integrate_oscillatory(phase, amp, 0.0, 1.0, lambda, spec);
    } else {
        // s = u^(1/a) maps the singular factor to u^(i Im(alpha)/a), which is
        // bounded; the remaining log-oscillation near u = 0 is handled by the
        // adaptive bisection.
        const double beta = alpha.imag() / a;
        const double inv_a = 1.0 / a;
        auto amp = [beta, inv_a](double u) -> std::complex<double> {
            if (u <= 0.0) return {0.0, 0.0};
            return inv_a * std::polar(1.0, beta * std::log(u));
        };
        auto phase = [inv_a](double u) { return u <= 0.0 ? 0.0 : std::pow(u, inv_a); };
        head = integrate_oscillatory(phase, amp, 0.0, 1.0, lambda, spec);
    }

    // [1, support]: regular integrand with the zeta^2 taper.
    auto tail_amp = [&alpha, &cutoff](double s) -> std::complex<double> {
        const double z = cutoff.zeta(s);
        return std::exp((alpha - 1.0) * std::log(s)) * (z * z);
    };
    auto tail_phase = [](double s) { return s; };
    QuadResult tail =
        integrate_oscillatory(tail_phase, tail_amp, 1.0, cutoff.zeta_support, lambda, spec);

    QuadResult out;
    out.value = head.value + tail.value;
    out.error = head.error + tail.error;
    out.evals = head.evals + tail.evals;
    out.converged = head.converged && tail.converged;
    return out;
}

}  // namespace oscillab

#include "oscillab/analytic.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "oscillab/parallel.hpp"
#include "oscillab/rng.hpp"

namespace oscillab {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoeff[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(std::complex<double> z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

std::complex<double> complex_gamma(std::complex<double> z) {
    if (is_nonpositive_integer(z))
        throw std::domain_error("complex_gamma: pole at nonpositive integer");
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return kPi / (std::sin(kPi * z) * complex_gamma(1.0 - z));
    }
    z -= 1.0;
    std::complex<double> x = kLanczosCoeff[0];
    for (int i = 1; i < 9; ++i) x += kLanczosCoeff[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + kLanczosG + 0.5;
    return std::sqrt(kTwoPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

AlphaParam::AlphaParam(std::complex<double> a) : alpha(a) {
    if (is_nonpositive_integer(a)) {
        prefactor = {0.0, 0.0};  // 1/Gamma vanishes at the poles
    } else {
        prefactor = std::exp(a * a) / complex_gamma(a);
    }
}

std::complex<double> delta_alpha_density(const AlphaParam& alpha, double s,
                                         const CutoffSpec& cutoff) {
    if (!(alpha.alpha.real() > 0.0))
        throw std::domain_error("delta_alpha_density: requires Re(alpha) > 0");
    if (s <= 0.0) return {0.0, 0.0};
    const double z = cutoff.zeta(s);
    if (z == 0.0) return {0.0, 0.0};
    return alpha.prefactor * std::exp((alpha.alpha - 1.0) * std::log(s)) * (z * z);
}

QuadResult delta_alpha_fourier(const AlphaParam& alpha, double t, const CutoffSpec& cutoff,
                               const QuadratureSpec& spec) {
    if (!(alpha.alpha.real() > 0.0))
        throw std::domain_error("delta_alpha_fourier: requires Re(alpha) > 0");
    QuadResult r = fourier_halfline(alpha.alpha, cutoff, t, spec);
    r.value *= alpha.prefactor;
    r.error *= std::abs(alpha.prefactor);
    return r;
}

QuadResult kernel_K_alpha(const PhaseParams& params, double lambda, const AlphaParam& alpha,
                          double u, double v, double x, double y, const CutoffSpec& cutoff,
                          const QuadratureSpec& spec) {
    QuadResult k = kernel_K(params, lambda, u, v, x, y, cutoff, spec);
    const double tau = lambda * (ipow(x, params.m) - ipow(u, params.m)) / kTwoPi;
    QuadResult dh = delta_alpha_fourier(alpha, tau, cutoff, spec);
    QuadResult out;
    out.value = k.value * dh.value;
    out.error = std::abs(k.value) * dh.error + std::abs(dh.value) * k.error;
    out.evals = k.evals + dh.evals;
    out.converged = k.converged && dh.converged;
    return out;
}

PowerIterResult largest_singular_value(const LinearOperator& op, int max_iter, double tol,
                                       std::uint64_t seed) {
    PowerIterResult res;
    if (op.rows == 0 || op.cols == 0) return res;

    std::vector<std::complex<double>> v(op.cols), y(op.rows);
    Rng rng(seed);
    for (auto& c : v) c = rng.complex_uniform();

    auto weighted_norm = [](const std::vector<std::complex<double>>& a, double w) {
        double s = 0.0;
        for (const auto& c : a) s += std::norm(c);
        return std::sqrt(s * w);
    };

    double sigma_prev = -1.0;
    for (int iter = 1; iter <= max_iter; ++iter) {
        const double nv = weighted_norm(v, op.weight_in);
        if (nv == 0.0) {
            for (auto& c : v) c = rng.complex_uniform();
            continue;
        }
        for (auto& c : v) c /= nv;
        op.apply(v.data(), y.data());
        const double sigma = weighted_norm(y, op.weight_out);
        res.sigma = sigma;
        res.iterations = iter;
        if (sigma == 0.0) {
            res.converged = true;  // zero operator
            return res;
        }
        if (sigma_prev >= 0.0 && std::fabs(sigma - sigma_prev) <= tol * sigma) {
            res.converged = true;
            return res;
        }
        sigma_prev = sigma;
        op.apply_adjoint(y.data(), v.data());
    }
    return res;
}

KernelAlphaOperator::KernelAlphaOperator(const PhaseParams& params, double lambda,
                                         const AlphaParam& alpha, const GridSpec& grid,
                                         const CutoffSpec& cutoff, const QuadratureSpec& qspec,
                                         int jobs)
    : jobs_(jobs) {
    grid.validate();
    if (static_cast<std::size_t>(grid.nx) * grid.ny > 4096)
        throw std::invalid_argument("KernelAlphaOperator: grid too large (nx*ny <= 4096)");
    nx_ = grid.nx;
    ny_ = grid.ny;
    hxy_ = grid.hx() * grid.hy();

    Axis ax = Axis::uniform(grid.x_lo, grid.x_hi, grid.nx);
    Axis ay = Axis::uniform(grid.y_lo, grid.y_hi, grid.ny);

    // fixed composite 15-point rule dense enough for the worst kernel phase
    const double range_k = (params.k % 2 == 0) ? 1.0 : 2.0;
    const double range_l = (params.l % 2 == 0) ? 1.0 : 2.0;
    const double sweep = lambda * 2.0 * (range_k + range_l);
    const int panels = std::min(4096, std::max(8, static_cast<int>(
                                                    std::ceil(sweep / (kTwoPi * 1.5)))));
    nt_ = static_cast<std::size_t>(panels) * 15;

    std::vector<double> tq(nt_);
    wt_.resize(nt_);
    const double hpanel = 2.0 / panels;  // t in [-1, 1]
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double c = -1.0 + (pnl + 0.5) * hpanel;
        const double h = 0.5 * hpanel;
        std::size_t base = static_cast<std::size_t>(pnl) * 15;
        std::size_t pos = 0;
        for (int i = 0; i < 8; ++i) {
            const int reps = (i == 7) ? 1 : 2;
            for (int r = 0; r < reps; ++r, ++pos) {
                tq[base + pos] = (r == 0) ? c - h * detail::kGK15Nodes[i]
                                          : c + h * detail::kGK15Nodes[i];
                wt_[base + pos] = h * detail::kGK15Weights[i];
            }
        }
    }

    u_.resize(nx_ * nt_);
    vt_.resize(nt_ * ny_);
    psi_.resize(nx_ * nt_ * ny_);
    for (std::size_t a = 0; a < nx_; ++a) {
        const double um = ipow(ax.node[a], params.m);
        for (std::size_t q = 0; q < nt_; ++q)
            u_[a * nt_ + q] = std::polar(1.0, lambda * um * ipow(tq[q], params.k));
    }
    for (std::size_t q = 0; q < nt_; ++q) {
        const double tl = ipow(tq[q], params.l);
        for (std::size_t b = 0; b < ny_; ++b)
            vt_[q * ny_ + b] = std::polar(1.0, lambda * ipow(ay.node[b], params.n) * tl);
    }
    parallel_for(
        static_cast<std::int64_t>(nx_),
        [&](std::int64_t a) {
            for (std::size_t q = 0; q < nt_; ++q) {
                float* row = &psi_[(a * nt_ + q) * ny_];
                for (std::size_t b = 0; b < ny_; ++b)
                    row[b] = static_cast<float>(cutoff.psi(ax.node[a], ay.node[b], tq[q]));
            }
        },
        jobs_);

    // delta_hat factor over the distinct phase differences, cached on a
    // quantized key (exact collisions only for genuinely equal differences)
    d_.resize(nx_ * nx_);
    std::map<long long, std::vector<std::size_t>> buckets;
    std::vector<double> taus(nx_ * nx_);
    for (std::size_t i = 0; i < nx_; ++i)
        for (std::size_t a = 0; a < nx_; ++a) {
            const double tau =
                lambda * (ipow(ax.node[i], params.m) - ipow(ax.node[a], params.m)) / kTwoPi;
            taus[i * nx_ + a] = tau;
            buckets[llround(tau * 1048576.0)].push_back(i * nx_ + a);
        }
    std::vector<std::pair<double, std::vector<std::size_t>>> unique_taus;
    unique_taus.reserve(buckets.size());
    for (auto& kv : buckets) unique_taus.emplace_back(taus[kv.second.front()], std::move(kv.second));
    std::vector<std::complex<double>> dvals(unique_taus.size());
    parallel_for(
        static_cast<std::int64_t>(unique_taus.size()),
        [&](std::int64_t t) {
            dvals[t] = delta_alpha_fourier(alpha, unique_taus[t].first, cutoff, qspec).value;
        },
        jobs_);
    for (std::size_t t = 0; t < unique_taus.size(); ++t)
        for (std::size_t idx : unique_taus[t].second) d_[idx] = dvals[t];
}

void KernelAlphaOperator::apply(const std::complex<double>* g, std::complex<double>* out) const {
    std::vector<std::complex<double>> B(nt_ * nx_), C(nt_ * nx_);
    // B[q][a] = conj(U[a][q]) sum_b conj(V[b][q]) psi[a][q][b] g[a][b]
    parallel_for(
        static_cast<std::int64_t>(nx_),
        [&](std::int64_t a) {
            for (std::size_t q = 0; q < nt_; ++q) {
                const float* prow = &psi_[(a * nt_ + q) * ny_];
                const std::complex<double>* vrow = &vt_[q * ny_];
                std::complex<double> s{0.0, 0.0};
                for (std::size_t b = 0; b < ny_; ++b)
                    s += std::conj(vrow[b]) * (static_cast<double>(prow[b]) * g[a * ny_ + b]);
                B[q * nx_ + a] = std::conj(u_[a * nt_ + q]) * s;
            }
        },
        jobs_);
    // C[q][i] = sum_a D[i][a] B[q][a]
    parallel_for(
        static_cast<std::int64_t>(nt_),
        [&](std::int64_t q) {
            for (std::size_t i = 0; i < nx_; ++i) {
                const std::complex<double>* drow = &d_[i * nx_];
                const std::complex<double>* brow = &B[q * nx_];
                std::complex<double> s{0.0, 0.0};
                for (std::size_t a = 0; a < nx_; ++a) s += drow[a] * brow[a];
                C[q * nx_ + i] = s;
            }
        },
        jobs_);
    // out[i][j] = hxy sum_q wt[q] U[i][q] V[j][q] psi[i][q][j] C[q][i]
    parallel_for(
        static_cast<std::int64_t>(nx_),
        [&](std::int64_t i) {
            std::complex<double>* orow = &out[i * ny_];
            for (std::size_t j = 0; j < ny_; ++j) orow[j] = {0.0, 0.0};
            for (std::size_t q = 0; q < nt_; ++q) {
                const std::complex<double> c = wt_[q] * u_[i * nt_ + q] * C[q * nx_ + i];
                const float* prow = &psi_[(i * nt_ + q) * ny_];
                const std::complex<double>* vrow = &vt_[q * ny_];
                for (std::size_t j = 0; j < ny_; ++j)
                    orow[j] += c * vrow[j] * static_cast<double>(prow[j]);
            }
            for (std::size_t j = 0; j < ny_; ++j) orow[j] *= hxy_;
        },
        jobs_);
}

void KernelAlphaOperator::apply_adjoint(const std::complex<double>* f,
                                        std::complex<double>* out) const {
    std::vector<std::complex<double>> B(nt_ * nx_), C(nt_ * nx_);
    // B[q][i] = conj(U[i][q]) sum_j conj(V[j][q]) psi[i][q][j] F[i][j]
    parallel_for(
        static_cast<std::int64_t>(nx_),
        [&](std::int64_t i) {
            for (std::size_t q = 0; q < nt_; ++q) {
                const float* prow = &psi_[(i * nt_ + q) * ny_];
                const std::complex<double>* vrow = &vt_[q * ny_];
                std::complex<double> s{0.0, 0.0};
                for (std::size_t j = 0; j < ny_; ++j)
                    s += std::conj(vrow[j]) * (static_cast<double>(prow[j]) * f[i * ny_ + j]);
                B[q * nx_ + i] = std::conj(u_[i * nt_ + q]) * s;
            }
        },
        jobs_);
    // C[q][a] = sum_i conj(D[i][a]) B[q][i]
    parallel_for(
        static_cast<std::int64_t>(nt_),
        [&](std::int64_t q) {
            const std::complex<double>* brow = &B[q * nx_];
            for (std::size_t a = 0; a < nx_; ++a) {
                std::complex<double> s{0.0, 0.0};
                for (std::size_t i = 0; i < nx_; ++i) s += std::conj(d_[i * nx_ + a]) * brow[i];
                C[q * nx_ + a] = s;
            }
        },
        jobs_);
    // out[a][b] = hxy sum_q wt[q] U[a][q] V[b][q] psi[a][q][b] C[q][a]
    parallel_for(
        static_cast<std::int64_t>(nx_),
        [&](std::int64_t a) {
            std::complex<double>* orow = &out[a * ny_];
            for (std::size_t b = 0; b < ny_; ++b) orow[b] = {0.0, 0.0};
            for (std::size_t q = 0; q < nt_; ++q) {
                const std::complex<double> c = wt_[q] * u_[a * nt_ + q] * C[q * nx_ + a];
                const float* prow = &psi_[(a * nt_ + q) * ny_];
                const std::complex<double>* vrow = &vt_[q * ny_];
                for (std::size_t b = 0; b < ny_; ++b)
                    orow[b] += c * vrow[b] * static_cast<double>(prow[b]);
            }
            for (std::size_t b = 0; b < ny_; ++b) orow[b] *= hxy_;
        },
        jobs_);
}

std::complex<double> KernelAlphaOperator::entry(std::size_t a, std::size_t b, std::size_t i,
                                                std::size_t j) const {
    std::complex<double> k{0.0, 0.0};
    for (std::size_t q = 0; q < nt_; ++q) {
        const std::complex<double> aij = u_[i * nt_ + q] * vt_[q * ny_ + j] *
                                         static_cast<double>(psi_[(i * nt_ + q) * ny_ + j]);
        const std::complex<double> aab = u_[a * nt_ + q] * vt_[q * ny_ + b] *
                                         static_cast<double>(psi_[(a * nt_ + q) * ny_ + b]);
        k += wt_[q] * aij * std::conj(aab);
    }
    return k * d_[i * nx_ + a];
}

LinearOperator KernelAlphaOperator::as_linop() const {
    LinearOperator op;
    op.rows = op.cols = dim();
    op.weight_in = op.weight_out = hxy_;
    op.apply = [this](const std::complex<double>* g, std::complex<double>* out) {
        apply(g, out);
    };
    op.apply_adjoint = [this](const std::complex<double>* f, std::complex<double>* out) {
        apply_adjoint(f, out);
    };
    return op;
}

L2EndpointReport l2_endpoint_check(const L2EndpointConfig& config) {
    AlphaParam alpha(config.alpha);
    L2EndpointReport rep;
    rep.target = 1.0 / config.params.m + 1.0 / std::max(config.params.n, config.params.l);
    rep.tol = 0.1 * rep.target;

    for (double lambda : config.lambdas) {
        KernelAlphaOperator op(config.params, lambda, alpha, config.grid, CutoffSpec{},
                               config.quad, config.jobs);
        PowerIterResult pit =
            largest_singular_value(op.as_linop(), config.max_iter, config.tol, config.seed);
        L2EndpointPoint pt;
        pt.lambda = lambda;
        pt.norm = pit.sigma;
        pt.iterations = pit.iterations;
        pt.converged = pit.converged;
        rep.all_converged = rep.all_converged && pit.converged;
        rep.points.push_back(pt);
    }

    std::vector<SweepPoint> table;
    for (const auto& pt : rep.points) table.push_back({pt.lambda, pt.norm, pt.converged});
    rep.fit = fit_exponent(table);
    rep.pass = std::fabs(-rep.fit.slope - rep.target) <= rep.tol;
    return rep;
}

}  // namespace oscillab

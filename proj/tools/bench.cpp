// Times the OpenMP kernels against the serial reference implementations.

#include <chrono>
#include <complex>
#include <cstdio>
#include <functional>

#include "oscillab/norms.hpp"
#include "oscillab/op.hpp"
#include "oscillab/parallel.hpp"
#include "oscillab/serial_ref.hpp"

using namespace oscillab;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    int jobs = argc > 1 ? std::atoi(argv[1]) : -1;
    const int threads = jobs > 0 ? jobs : hardware_jobs();
    std::printf("threads: %d\n\n", threads);

    PhaseParams params(1, 2, 2, 1);
    CutoffSpec cutoff;
    QuadratureSpec qspec;
    const double lambda = 300.0;

    Grid2D grid;
    grid.x = Axis::uniform(-1.25, 1.25, 48);
    grid.y = Axis::uniform(-1.25, 1.25, 48);
    std::function<std::complex<double>(double)> chi = [](double) {
        return std::complex<double>{1.0, 0.0};
    };

    std::printf("%-28s %12s %12s %8s\n", "kernel", "serial ms", "parallel ms", "speedup");

    {
        auto t0 = std::chrono::steady_clock::now();
        SampledField ref = serial_ref::apply_T(params, lambda, chi, 0.0, 1.0, grid, cutoff, qspec);
        const double ts = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        SampledField par = apply_T(params, lambda, chi, 0.0, 1.0, grid, cutoff, qspec, jobs);
        const double tp = ms_since(t0);
        double diff = 0.0;
        for (std::size_t i = 0; i < ref.values.size(); ++i)
            diff = std::max(diff, std::abs(ref.values[i] - par.values[i]));
        std::printf("%-28s %12.1f %12.1f %7.2fx   (max diff %.1e)\n", "apply_T 48x48", ts, tp,
                    ts / tp, diff);
    }

    {
        SampledField g(grid);
        for (std::size_t i = 0; i < g.values.size(); ++i)
            g.values[i] = {std::sin(0.1 * i) + 1.5, std::cos(0.2 * i)};
        Axis taxis = Axis::uniform(-1.0, 1.0, 512);
        auto t0 = std::chrono::steady_clock::now();
        SampledLine ref = serial_ref::apply_T_star(params, lambda, g, taxis, cutoff);
        const double ts = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        SampledLine par = apply_T_star(params, lambda, g, taxis, cutoff, jobs);
        const double tp = ms_since(t0);
        double diff = 0.0;
        for (std::size_t i = 0; i < ref.values.size(); ++i)
            diff = std::max(diff, std::abs(ref.values[i] - par.values[i]));
        std::printf("%-28s %12.1f %12.1f %7.2fx   (max diff %.1e)\n", "apply_T_star 48x48x512",
                    ts, tp, ts / tp, diff);
    }

    {
        Grid2D small;
        small.x = Axis::uniform(-1.25, 1.25, 8);
        small.y = Axis::uniform(-1.25, 1.25, 8);
        SampledField g(small);
        for (std::size_t i = 0; i < g.values.size(); ++i)
            g.values[i] = {std::sin(0.3 * i), std::cos(0.7 * i)};
        auto t0 = std::chrono::steady_clock::now();
        SampledField ref = serial_ref::apply_TK(params, 100.0, g, cutoff, qspec);
        const double ts = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        SampledField par = apply_TK(params, 100.0, g, cutoff, qspec, nullptr, jobs);
        const double tp = ms_since(t0);
        double diff = 0.0;
        for (std::size_t i = 0; i < ref.values.size(); ++i)
            diff = std::max(diff, std::abs(ref.values[i] - par.values[i]));
        std::printf("%-28s %12.1f %12.1f %7.2fx   (max diff %.1e)\n", "apply_TK 8x8", ts, tp,
                    ts / tp, diff);
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        NormEstimate ser =
            witness_ratio(params, 4096.0, 6.0, cutoff, qspec, WitnessOptions{}, 1);
        const double ts = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        NormEstimate par =
            witness_ratio(params, 4096.0, 6.0, cutoff, qspec, WitnessOptions{}, jobs);
        const double tp = ms_since(t0);
        std::printf("%-28s %12.1f %12.1f %7.2fx   (max diff %.1e)\n", "witness lambda=4096", ts,
                    tp, ts / tp, std::fabs(ser.value - par.value));
    }

    return 0;
}

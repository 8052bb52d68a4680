// Timing lane: serial reference vs OpenMP kernels across grid sizes.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "chemo/elliptic.hpp"
#include "chemo/kernels.hpp"
#include "chemo/rng.hpp"

using namespace chemo;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn(); // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return 1e3 * s / reps;
}

ScalarField random_field(const GridSpec& g, std::uint64_t seed, double lo, double hi) {
    ScalarField f(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            f.at(i, j) = lo + (hi - lo) * cell_uniform01(seed, i, j);
    return f;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP: %d thread(s), parallel above %d cells\n",
                omp_get_max_threads(), omp_min_cells);
#else
    std::printf("OpenMP: compiled out\n");
#endif
    std::printf("%-22s %8s %12s %12s %8s\n", "kernel", "grid", "serial[ms]",
                "omp[ms]", "speedup");

    for (int n : {64, 128, 256, 512}) {
        const GridSpec g(n, n, 0.1, 0.1);
        const ScalarField u = random_field(g, 7, 0.5, 1.5);
        const ScalarField v = random_field(g, 11, 1.5, 2.5);
        ScalarField out(g);
        FaceFluxField flux(g);
        const int reps = n <= 128 ? 200 : 50;

        struct Row {
            const char* name;
            std::function<void()> serial, parallel;
        };
        const Row rows[] = {
            {"laplacian",
             [&] { ref::laplacian_neumann(u, out); },
             [&] { kern::laplacian_neumann(u, out); }},
            {"helmholtz apply",
             [&] { ref::apply_helmholtz(u, 1.0, out); },
             [&] { kern::apply_helmholtz(u, 1.0, out); }},
            {"gradient+divergence",
             [&] {
                 ref::gradient_faces(v, flux);
                 ref::divergence(flux, out);
             },
             [&] {
                 kern::gradient_faces(v, flux);
                 kern::divergence(flux, out);
             }},
            {"integrate",
             [&] { (void)ref::integrate(u); },
             [&] { (void)kern::integrate(u); }},
            {"dot_weighted",
             [&] { (void)ref::dot_weighted(u, v); },
             [&] { (void)kern::dot_weighted(u, v); }},
        };

        for (const Row& r : rows) {
            const double ts = time_ms(r.serial, reps);
            const double tp = time_ms(r.parallel, reps);
            std::printf("%-22s %4dx%-4d %11.4f %11.4f %7.2fx\n", r.name, n, n, ts,
                        tp, ts / tp);
        }

        // End-to-end solve comparison: plain CG vs spectrally preconditioned.
        {
            const HelmholtzSolver cg(g, Preconditioner::None);
            const HelmholtzSolver fast(g, Preconditioner::Spectral);
            const ScalarField w = random_field(g, 13, 1.0, 2.0);
            const double t_cg =
                time_ms([&] { (void)cg.solve(w, 1e-10, 100000); }, n <= 128 ? 5 : 1);
            const double t_fast =
                time_ms([&] { (void)fast.solve(w, 1e-10, 100000); }, n <= 128 ? 20 : 5);
            std::printf("%-22s %4dx%-4d %11.4f %11.4f %7.2fx\n", "helmholtz solve",
                        n, n, t_cg, t_fast, t_cg / t_fast);
        }
        std::printf("\n");
    }
    return 0;
}

// The OpenMP kernels must match the serial reference bit for bit: same
// per-cell arithmetic, same reduction order. This is what keeps results
// independent of --threads.

#include "doctest.h"
#include "helpers.hpp"

#include "chemo/kernels.hpp"

using namespace chemo;
using testing::random_field;
using testing::random_flux;

TEST_SUITE("kernels") {

TEST_CASE("pointwise kernels agree bitwise with the reference") {
    // Sizes straddle the parallel threshold.
    for (int n : {16, 96, 128}) {
        const GridSpec g(n, n, 0.1, 0.1);
        const ScalarField f = random_field(g, 42 + n, -3.0, 3.0);

        ScalarField a(g), b(g);
        ref::laplacian_neumann(f, a);
        kern::laplacian_neumann(f, b);
        for (int k = 0; k < g.cells(); ++k) CHECK(a.values[k] == b.values[k]);

        ref::apply_helmholtz(f, 0.37, a);
        kern::apply_helmholtz(f, 0.37, b);
        for (int k = 0; k < g.cells(); ++k) CHECK(a.values[k] == b.values[k]);

        FaceFluxField ga(g), gb(g);
        ref::gradient_faces(f, ga);
        kern::gradient_faces(f, gb);
        for (std::size_t k = 0; k < ga.fx.size(); ++k) CHECK(ga.fx[k] == gb.fx[k]);
        for (std::size_t k = 0; k < ga.fy.size(); ++k) CHECK(ga.fy[k] == gb.fy[k]);

        const FaceFluxField flux = random_flux(g, 7, 2.0);
        ref::divergence(flux, a);
        kern::divergence(flux, b);
        for (int k = 0; k < g.cells(); ++k) CHECK(a.values[k] == b.values[k]);
    }
}

TEST_CASE("reductions agree bitwise with the reference") {
    for (int n : {16, 96, 128}) {
        const GridSpec g(n, n, 0.1, 0.1);
        const ScalarField f = random_field(g, 5 + n, -2.0, 2.0);
        const ScalarField h = random_field(g, 17 + n, -2.0, 2.0);

        CHECK(ref::integrate(f) == kern::integrate(f));
        CHECK(ref::dot_weighted(f, h) == kern::dot_weighted(f, h));
        CHECK(ref::norm2(f) == kern::norm2(f));
        CHECK(ref::gradient_energy(f) == kern::gradient_energy(f));

        const FieldStats a = ref::field_stats(f);
        const FieldStats b = kern::field_stats(f);
        CHECK(a.min == b.min);
        CHECK(a.max == b.max);
        CHECK(a.mean == b.mean);
        CHECK(a.l1 == b.l1);
        CHECK(a.l2 == b.l2);
        CHECK(a.linf == b.linf);
    }
}

} // TEST_SUITE

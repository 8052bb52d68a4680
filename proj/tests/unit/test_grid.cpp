#include <cmath>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"

#include "chemo/errors.hpp"
#include "chemo/field_io.hpp"
#include "chemo/kernels.hpp"

using namespace chemo;
using testing::random_field;
using testing::random_flux;

TEST_SUITE("grid") {

TEST_CASE("integrate: constant field is area times constant") {
    GridSpec g(64, 64, 0.1, 0.1);
    ScalarField f(g, 3.0);
    CHECK(integrate(f) == doctest::Approx(0.01 * 3.0).epsilon(1e-14));
    CHECK(integrate(ScalarField(g, 0.0)) == 0.0);
}

TEST_CASE("integrate: 2x2 hand sum") {
    GridSpec g(2, 2, 1.0, 1.0);
    ScalarField f(g);
    f.at(0, 0) = 1.0;
    f.at(1, 0) = 2.0;
    f.at(0, 1) = 3.0;
    f.at(1, 1) = 4.0;
    // 10 * (0.5 * 0.5)
    CHECK(integrate(f) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("laplacian: constant field maps to zero") {
    GridSpec g(17, 9, 0.3, 0.2);
    ScalarField lap = laplacian_neumann(ScalarField(g, 7.5));
    for (double v : lap.values) CHECK(v == 0.0);
}

TEST_CASE("laplacian: unit spike on a 3x3 grid with mirror closure") {
    GridSpec g(3, 3, 3.0, 3.0); // hx = hy = 1
    ScalarField f(g);
    f.at(1, 1) = 1.0;
    ScalarField lap = laplacian_neumann(f);
    CHECK(lap.at(1, 1) == doctest::Approx(-4.0));
    CHECK(lap.at(0, 1) == doctest::Approx(1.0));
    CHECK(lap.at(2, 1) == doctest::Approx(1.0));
    CHECK(lap.at(1, 0) == doctest::Approx(1.0));
    CHECK(lap.at(1, 2) == doctest::Approx(1.0));
    CHECK(lap.at(0, 0) == doctest::Approx(0.0));
    CHECK(lap.at(2, 0) == doctest::Approx(0.0));
    CHECK(lap.at(0, 2) == doctest::Approx(0.0));
    CHECK(lap.at(2, 2) == doctest::Approx(0.0));
}

TEST_CASE("laplacian integrates to zero for any field") {
    const GridSpec g(23, 31, 0.1, 0.07);
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const ScalarField f = random_field(g, seed, -5.0, 5.0);
        const ScalarField lap = laplacian_neumann(f);
        const FieldStats st = field_stats(lap);
        CHECK(std::abs(integrate(lap)) <= 1e-12 * (st.linf + 1.0) * g.area());
    }
}

TEST_CASE("gradient: constant field has all-zero faces") {
    GridSpec g(8, 8, 1.0, 1.0);
    FaceFluxField grad = gradient_faces(ScalarField(g, 2.0));
    for (double v : grad.fx) CHECK(v == 0.0);
    for (double v : grad.fy) CHECK(v == 0.0);
}

TEST_CASE("gradient: 2x1 grid single interior face") {
    GridSpec g(2, 1, 2.0, 1.0); // hx = 1
    ScalarField f(g);
    f.at(0, 0) = 0.0;
    f.at(1, 0) = 3.0;
    FaceFluxField grad = gradient_faces(f);
    CHECK(grad.x_at(1, 0) == doctest::Approx(3.0));
    CHECK(grad.x_at(0, 0) == 0.0);
    CHECK(grad.x_at(2, 0) == 0.0);
    CHECK(grad.zero_boundary());
}

TEST_CASE("gradient of any field keeps boundary faces at zero") {
    const GridSpec g(13, 7, 0.5, 0.9);
    for (std::uint64_t seed : {10ULL, 20ULL})
        CHECK(gradient_faces(random_field(g, seed)).zero_boundary());
}

TEST_CASE("divergence: zero flux and the 2x1 telescoping case") {
    GridSpec g(2, 1, 2.0, 1.0);
    FaceFluxField flux(g);
    ScalarField div = divergence(flux);
    CHECK(div.at(0, 0) == 0.0);
    CHECK(div.at(1, 0) == 0.0);

    flux.x_at(1, 0) = 3.0;
    div = divergence(flux);
    CHECK(div.at(0, 0) == doctest::Approx(3.0));
    CHECK(div.at(1, 0) == doctest::Approx(-3.0));
}

TEST_CASE("conservativity: divergence of zero-boundary flux integrates away") {
    const GridSpec g(32, 24, 0.1, 0.1);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const FaceFluxField flux = random_flux(g, seed, 3.0);
        double linf = 0.0;
        for (double v : flux.fx) linf = std::max(linf, std::abs(v));
        for (double v : flux.fy) linf = std::max(linf, std::abs(v));
        const double bound = 1e-12 * linf * 2.0 * (g.lx + g.ly);
        CHECK(std::abs(integrate(divergence(flux))) <= bound);
    }
}

TEST_CASE("self-adjointness of the Neumann laplacian") {
    const GridSpec g(24, 24, 0.1, 0.1);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ScalarField f = random_field(g, seed, -2.0, 2.0);
        const ScalarField h = random_field(g, seed ^ 0xabcd, -2.0, 2.0);
        const double a = kern::dot_weighted(laplacian_neumann(f), h);
        const double b = kern::dot_weighted(f, laplacian_neumann(h));
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("laplacian equals divergence of gradient exactly") {
    const GridSpec g(19, 26, 0.13, 0.21);
    const ScalarField f = random_field(g, 77, -4.0, 4.0);
    const ScalarField lap = laplacian_neumann(f);
    const ScalarField composed = divergence(gradient_faces(f));
    for (int k = 0; k < g.cells(); ++k)
        CHECK(lap.values[k] == composed.values[k]); // same floating-point path
}

TEST_CASE("field_stats covers the documented cases") {
    GridSpec g(4, 4, 1.0, 1.0);
    const ScalarField c(g, 2.5);
    FieldStats st = field_stats(c);
    CHECK(st.min == 2.5);
    CHECK(st.max == 2.5);
    CHECK(st.mean == doctest::Approx(2.5));

    ScalarField pm(g);
    for (int k = 0; k < g.cells(); ++k) pm.values[k] = (k % 2 == 0) ? -1.0 : 1.0;
    st = field_stats(pm);
    CHECK(st.l1 == doctest::Approx(g.cell_area() * g.cells()));

    ScalarField spike(g, 0.0);
    spike.at(2, 1) = 1e6;
    CHECK(field_stats(spike).linf == 1e6);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridSpec(0, 4, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(GridSpec(4, 4, -1.0, 1.0), ValidationError);
    const GridSpec g(5, 4, 1.0, 2.0);
    CHECK(g.hx() == doctest::Approx(0.2));
    CHECK(g.hy() == doctest::Approx(0.5));
}

TEST_CASE("field dump round-trips through the text format") {
    const GridSpec g(6, 5, 0.1, 0.1);
    const ScalarField f = random_field(g, 99, -1e3, 1e3);
    std::stringstream ss;
    write_field(ss, f);

    // Header first, then ny rows starting with j = 0.
    std::string header;
    std::getline(ss, header);
    CHECK(header.substr(0, 3) == "6 5");

    ss.seekg(0);
    const ScalarField back = read_field(ss);
    REQUIRE(back.grid == g);
    for (int k = 0; k < g.cells(); ++k)
        CHECK(back.values[k] == doctest::Approx(f.values[k]).epsilon(1e-15));
}

} // TEST_SUITE

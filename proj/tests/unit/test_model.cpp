#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "../common/manufactured.hpp"

#include "chemo/errors.hpp"
#include "chemo/kernels.hpp"
#include "chemo/model.hpp"

using namespace chemo;
using testing::random_field;

TEST_SUITE("model") {

TEST_CASE("chi_eval: documented values") {
    CHECK(chi_eval(SensitivityLaw::inverse(1e4), 100.0) == doctest::Approx(100.0));
    CHECK(chi_eval(SensitivityLaw::constant(1e3), -5.0) == 1e3);
    CHECK(chi_eval(SensitivityLaw::constant(1e3), 42.0) == 1e3);
    CHECK(chi_eval(SensitivityLaw::logarithmic(1.0), std::exp(1.0)) ==
          doctest::Approx(1.0));
    CHECK(chi_eval(SensitivityLaw::inverse_power(8.0, 3.0), 2.0) ==
          doctest::Approx(1.0));
}

TEST_CASE("chi_eval: domain violations throw") {
    CHECK_THROWS_AS(chi_eval(SensitivityLaw::inverse(1.0), 0.0), DomainViolation);
    CHECK_THROWS_AS(chi_eval(SensitivityLaw::inverse(1.0), -1.0), DomainViolation);
    CHECK_THROWS_AS(chi_eval(SensitivityLaw::inverse_power(1.0, 2.0), 0.0),
                    DomainViolation);
    // The log law needs v > 1, not just v > 0, to keep chi positive.
    CHECK_THROWS_AS(chi_eval(SensitivityLaw::logarithmic(1.0), 1.0), DomainViolation);
    CHECK_THROWS_AS(chi_eval(SensitivityLaw::logarithmic(1.0), 0.5), DomainViolation);
    CHECK(chi_eval(SensitivityLaw::logarithmic(1.0), 1.0 + 1e-9) > 0.0);
}

TEST_CASE("chi positivity across random admissible inputs") {
    std::uint64_t s = 0;
    const SensitivityLaw laws[] = {
        SensitivityLaw::constant(3.0), SensitivityLaw::inverse(2.0),
        SensitivityLaw::inverse_power(1.5, 2.5), SensitivityLaw::logarithmic(4.0)};
    for (int trial = 0; trial < 25000; ++trial) {
        for (const SensitivityLaw& law : laws) {
            const double lo = law.kind == SensitivityLaw::Kind::Log ? 1.0 : 0.0;
            const double v =
                lo + 1e-6 + 1e3 * cell_uniform01(11, trial & 0xffff, ++s & 0xffff);
            CHECK(chi_eval(law, v) > 0.0);
        }
    }
}

TEST_CASE("law invariants are enforced at construction") {
    CHECK_THROWS_AS(SensitivityLaw::constant(0.0), ValidationError);
    CHECK_THROWS_AS(SensitivityLaw::inverse(-1.0), ValidationError);
    CHECK_THROWS_AS(SensitivityLaw::inverse_power(1.0, 0.5), ValidationError);
    CHECK_THROWS_AS(ProductionLaw::power_shift(1.5), ValidationError);
    CHECK_THROWS_AS(ProductionLaw::power_shift(-0.1), ValidationError);
    CHECK_THROWS_AS(ProductionLaw::power_shift(0.5, 1.0, 2.0), ValidationError);
}

TEST_CASE("g_eval: documented values") {
    CHECK(g_eval(ProductionLaw::power_shift(0.5), 3.0) == doctest::Approx(2.0));
    CHECK(g_eval(ProductionLaw::power_shift(0.0), 1234.5) == doctest::Approx(1.0));
    CHECK(g_eval(ProductionLaw::linear(), 10.0) == 10.0);
    CHECK_THROWS_AS(g_eval(ProductionLaw::linear(), -1e-6), DomainViolation);
    CHECK_NOTHROW(g_eval(ProductionLaw::power_shift(0.5), -1e-13));
}

TEST_CASE("validate_production: bounds and the linear counterexample") {
    const ProductionLaw sqrt_law = ProductionLaw::power_shift(0.5);
    CHECK(validate_production(sqrt_law, {0.0, 1.0, 1e6}).ok);

    // g(u) = u fails the lower bound at u = 0; it still runs, flagged.
    const ProductionValidation bad =
        validate_production(ProductionLaw::linear(), {0.0});
    CHECK_FALSE(bad.ok);
    CHECK(!bad.violation.empty());

    // Dense sweep for an intermediate exponent.
    std::vector<double> samples;
    for (int k = 0; k <= 1000; ++k) samples.push_back(0.1 * k);
    CHECK(validate_production(ProductionLaw::power_shift(0.4), samples).ok);
}

TEST_CASE("chemotactic flux: hand-evaluated upwind case") {
    GridSpec g(2, 1, 2.0, 1.0); // hx = 1
    ScalarField u(g, 1.0);
    ScalarField v(g);
    v.at(0, 0) = 0.0;
    v.at(1, 0) = 2.0;
    double speed = 0.0;
    const FaceFluxField flux =
        chemotactic_flux(u, v, SensitivityLaw::constant(1.0), &speed);
    // Face gradient 2, v_face = 1, drift +x, upwind cell is the left one.
    CHECK(flux.x_at(1, 0) == doctest::Approx(2.0));
    CHECK(speed == doctest::Approx(2.0));
    const ScalarField div = divergence(flux);
    CHECK(div.at(0, 0) == doctest::Approx(2.0));
    CHECK(div.at(1, 0) == doctest::Approx(-2.0));
    // u_t picks up -div: the left cell drains toward the higher signal.
}

TEST_CASE("flux vanishes exactly for constant v or zero u") {
    const GridSpec g(16, 16, 0.1, 0.1);
    const ScalarField u = random_field(g, 3, 0.0, 5.0);
    const ScalarField v_const(g, 2.0);
    double speed = 1.0;
    FaceFluxField flux = chemotactic_flux(u, v_const, SensitivityLaw::inverse(7.0), &speed);
    for (double f : flux.fx) CHECK(f == 0.0);
    for (double f : flux.fy) CHECK(f == 0.0);
    CHECK(speed == 0.0);

    const ScalarField u0(g, 0.0);
    const ScalarField v = random_field(g, 4, 1.5, 2.5);
    flux = chemotactic_flux(u0, v, SensitivityLaw::constant(3.0));
    for (double f : flux.fx) CHECK(f == 0.0);
    for (double f : flux.fy) CHECK(f == 0.0);
}

TEST_CASE("flux boundary faces stay zero") {
    const GridSpec g(9, 14, 0.1, 0.2);
    const ScalarField u = random_field(g, 5, 0.0, 2.0);
    const ScalarField v = random_field(g, 6, 1.5, 3.0);
    CHECK(chemotactic_flux(u, v, SensitivityLaw::constant(1.0)).zero_boundary());
}

TEST_CASE("flux propagates sensitivity domain violations") {
    const GridSpec g(8, 8, 0.1, 0.1);
    const ScalarField u(g, 1.0);
    ScalarField v(g, 2.0);
    v.at(4, 4) = -3.0; // drags face means below zero
    CHECK_THROWS_AS((void)chemotactic_flux(u, v, SensitivityLaw::inverse(1.0)),
                    DomainViolation);
}

TEST_CASE("upwind flux divergence converges at first order or better") {
    const testing::ManufacturedPair mp{0.1, 0.1};
    for (const SensitivityLaw& law :
         {SensitivityLaw::constant(2.0), SensitivityLaw::inverse(3.0)}) {
        const double e1 = testing::flux_div_error(mp, law, 16);
        const double e2 = testing::flux_div_error(mp, law, 32);
        const double e3 = testing::flux_div_error(mp, law, 64);
        const double order12 = std::log2(e1 / e2);
        const double order23 = std::log2(e2 / e3);
        CHECK(order12 >= 1.0);
        CHECK(order23 >= 1.0);
    }
}

TEST_CASE("apply_production evaluates cellwise and guards the domain") {
    const GridSpec g(4, 4, 1.0, 1.0);
    ScalarField u(g, 3.0);
    const ScalarField w = apply_production(ProductionLaw::power_shift(0.5), u);
    for (double x : w.values) CHECK(x == doctest::Approx(2.0));
    u.at(1, 1) = -1.0;
    CHECK_THROWS_AS((void)apply_production(ProductionLaw::power_shift(0.5), u),
                    DomainViolation);
}

} // TEST_SUITE

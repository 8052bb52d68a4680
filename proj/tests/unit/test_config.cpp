#include <sstream>

#include "doctest.h"

#include "chemo/config.hpp"
#include "chemo/errors.hpp"
#include "chemo/presets.hpp"

using namespace chemo;

namespace {

ParsedConfig parse(const std::string& text) {
    std::istringstream ss(text);
    return parse_config_stream(ss);
}

} // namespace

TEST_SUITE("config") {

TEST_CASE("minimal file fills every documented default") {
    const ParsedConfig parsed = parse(
        "[model]\n"
        "production = \"power_shift\"\n"
        "beta = 0.5\n");
    REQUIRE(std::holds_alternative<SimConfig>(parsed));
    const SimConfig cfg = std::get<SimConfig>(parsed);
    CHECK(cfg.grid.nx == 64);
    CHECK(cfg.grid.ny == 64);
    CHECK(cfg.grid.lx == doctest::Approx(0.1));
    CHECK(cfg.params.production.beta == doctest::Approx(0.5));
    CHECK(cfg.params.production.lambda1 == 1.0);
    CHECK(cfg.u_bar == 1.0);
    CHECK(cfg.sigma == 0.0);
    CHECK(cfg.t_end == 100.0);
    CHECK(cfg.blowup_threshold == 1e10);
    CHECK(cfg.steady_rel_tol == 1e-7);
    CHECK(cfg.steady_window == 50);
    CHECK(cfg.heterogeneity_tol == 1e-3);
    CHECK(cfg.controller.dt == 1e-8);
    CHECK(cfg.controller.dt_min == 1e-14);
    CHECK(cfg.controller.dt_max == 1.0);
    CHECK(cfg.controller.rtol == 1e-4);
    CHECK(cfg.controller.cfl == 0.5);
}

TEST_CASE("beta outside [0,1] is a validation error") {
    CHECK_THROWS_AS(parse("[model]\nproduction = power_shift\nbeta = 1.5\n"),
                    ValidationError);
}

TEST_CASE("unknown keys and sections carry line numbers") {
    try {
        parse("[grid]\nnx = 8\nwidth = 9\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(parse("[turbo]\nx = 1\n"), ParseError);
    CHECK_THROWS_AS(parse("nx = 8\n"), ParseError);         // key before section
    CHECK_THROWS_AS(parse("[grid]\nnx 8\n"), ParseError);   // missing '='
    CHECK_THROWS_AS(parse("[grid]\nnx = 8\nnx = 9\n"), ParseError); // duplicate
}

TEST_CASE("comments and quoting") {
    const ParsedConfig parsed = parse(
        "# full-line comment\n"
        "[init]\n"
        "u_bar = 2.5   # trailing comment\n"
        "seed = 9\n");
    const SimConfig cfg = std::get<SimConfig>(parsed);
    CHECK(cfg.u_bar == 2.5);
    CHECK(cfg.seed == 9);
}

TEST_CASE("range expansion: 0.30:0.80:0.05 has 11 values") {
    const std::vector<double> v = expand_range("0.30:0.80:0.05");
    REQUIRE(v.size() == 11);
    CHECK(v.front() == doctest::Approx(0.30));
    CHECK(v.back() == doctest::Approx(0.80));
    CHECK(v[1] == doctest::Approx(0.35));

    const std::vector<double> list = expand_range("0.5, 0.1, 0.5, 0.9");
    REQUIRE(list.size() == 3); // sorted, deduplicated
    CHECK(list[0] == doctest::Approx(0.1));
}

TEST_CASE("a [sweep] section yields a SweepSpec") {
    const ParsedConfig parsed = parse(
        "[model]\n"
        "production = power_shift\n"
        "[sweep]\n"
        "beta = 0.30:0.80:0.05\n"
        "runs_per_beta = 2\n"
        "concurrency = 4\n");
    REQUIRE(std::holds_alternative<SweepSpec>(parsed));
    const SweepSpec sweep = std::get<SweepSpec>(parsed);
    CHECK(sweep.beta_values.size() == 11);
    CHECK(sweep.runs_per_beta == 2);
    CHECK(sweep.concurrency == 4);
}

TEST_CASE("sweeping a linear production is rejected") {
    CHECK_THROWS_AS(parse("[model]\nproduction = linear\n[sweep]\nbeta = 0.1,0.2\n"),
                    ValidationError);
}

TEST_CASE("presets carry the published parameter sets") {
    SUBCASE("fig1: four linear-production runs") {
        const Preset p = preset("fig1");
        REQUIRE(p.runs.size() == 4);
        CHECK_FALSE(p.sweep.has_value());
        const double ubars[] = {1.0, 1.0, 10.0, 10.0};
        const double chis[] = {1e2, 1e3, 1e2, 1e3};
        for (int k = 0; k < 4; ++k) {
            const SimConfig& cfg = p.runs[k].config;
            CHECK(cfg.params.production.kind == ProductionLaw::Kind::Linear);
            CHECK(cfg.params.sensitivity.kind == SensitivityLaw::Kind::Constant);
            CHECK(cfg.u_bar == ubars[k]);
            CHECK(cfg.params.sensitivity.chi0 == chis[k]);
            CHECK(cfg.sigma == 1.0);
        }
    }
    SUBCASE("fig2: three sqrt-production runs") {
        const Preset p = preset("fig2");
        REQUIRE(p.runs.size() == 3);
        const double ubars[] = {1.0, 10.0, 100.0};
        const double chis[] = {1e4, 1e3, 1e3};
        for (int k = 0; k < 3; ++k) {
            const SimConfig& cfg = p.runs[k].config;
            CHECK(cfg.params.production.beta == doctest::Approx(0.5));
            CHECK(cfg.u_bar == ubars[k]);
            CHECK(cfg.sigma == ubars[k]);
            CHECK(cfg.params.sensitivity.chi0 == chis[k]);
        }
    }
    SUBCASE("fig3: inverse and log at the same data") {
        const Preset p = preset("fig3");
        REQUIRE(p.runs.size() == 2);
        CHECK(p.runs[0].config.params.sensitivity.kind == SensitivityLaw::Kind::Inverse);
        CHECK(p.runs[1].config.params.sensitivity.kind == SensitivityLaw::Kind::Log);
        for (const auto& r : p.runs) {
            CHECK(r.config.u_bar == 100.0);
            CHECK(r.config.sigma == 10.0);
            CHECK(r.config.params.sensitivity.chi0 == 1e4);
            CHECK(r.config.params.production.beta == doctest::Approx(0.5));
        }
    }
    SUBCASE("fig4 sweeps") {
        const Preset a = preset("fig4a");
        REQUIRE(a.sweep.has_value());
        CHECK(a.sweep->base.params.sensitivity.kind == SensitivityLaw::Kind::Constant);
        CHECK(a.sweep->base.params.sensitivity.chi0 == 1e3);
        CHECK(a.sweep->base.u_bar == 10.0);
        CHECK(a.sweep->base.sigma == 1.0);
        CHECK(a.sweep->beta_values.front() == doctest::Approx(0.30));
        CHECK(a.sweep->beta_values.back() == doctest::Approx(0.80));

        const Preset b = preset("fig4b");
        REQUIRE(b.sweep.has_value());
        CHECK(b.sweep->base.params.sensitivity.kind == SensitivityLaw::Kind::Inverse);
        CHECK(b.sweep->base.params.sensitivity.chi0 == 1e4);
        CHECK(b.sweep->base.u_bar == 100.0);
        CHECK(b.sweep->base.sigma == 10.0);
    }
    SUBCASE("unknown preset") {
        CHECK_THROWS_AS(preset("fig9"), ValidationError);
    }
}

} // TEST_SUITE

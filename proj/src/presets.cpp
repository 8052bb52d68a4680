#include "chemo/presets.hpp"

#include <algorithm>
#include <cmath>

#include "chemo/errors.hpp"

namespace chemo {

namespace {

SimConfig base_config() {
    SimConfig cfg;
    cfg.seed = 1;
    return cfg;
}

std::vector<double> merge_betas(std::vector<double> coarse,
                                const std::vector<double>& fine) {
    coarse.insert(coarse.end(), fine.begin(), fine.end());
    std::sort(coarse.begin(), coarse.end());
    coarse.erase(std::unique(coarse.begin(), coarse.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                 coarse.end());
    return coarse;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig1", "fig2", "fig3", "fig4a", "fig4b"};
}

Preset preset(const std::string& name) {
    Preset p;
    p.name = name;

    if (name == "fig1") {
        // Linear production with constant sensitivity: the outcome hinges on
        // the size of chi * initial mass.
        const struct { double u_bar, chi; } cases[] = {
            {1.0, 1e2}, {1.0, 1e3}, {10.0, 1e2}, {10.0, 1e3}};
        for (const auto& c : cases) {
            SimConfig cfg = base_config();
            cfg.params.sensitivity = SensitivityLaw::constant(c.chi);
            cfg.params.production = ProductionLaw::linear();
            cfg.u_bar = c.u_bar;
            cfg.sigma = 1.0;
            p.runs.push_back({"ubar" + std::to_string(static_cast<int>(c.u_bar)) +
                                  "_chi1e" +
                                  std::to_string(static_cast<int>(std::log10(c.chi))),
                              cfg});
        }
        return p;
    }

    if (name == "fig2") {
        // Square-root production, constant sensitivity, increasing data.
        const struct { const char* label; double u_bar, sigma, chi; } cases[] = {
            {"a_ubar1_chi1e4", 1.0, 1.0, 1e4},
            {"b_ubar10_chi1e3", 10.0, 10.0, 1e3},
            {"c_ubar100_chi1e3", 100.0, 100.0, 1e3}};
        for (const auto& c : cases) {
            SimConfig cfg = base_config();
            cfg.params.sensitivity = SensitivityLaw::constant(c.chi);
            cfg.params.production = ProductionLaw::power_shift(0.5);
            cfg.u_bar = c.u_bar;
            cfg.sigma = c.sigma;
            p.runs.push_back({c.label, cfg});
        }
        return p;
    }

    if (name == "fig3") {
        // Same data, two signal-dependent sensitivities. chi0=1e4 for both;
        // g = (1+u)^(1/2) keeps v above 1, so chi0*log(v) stays positive.
        for (const bool inverse : {true, false}) {
            SimConfig cfg = base_config();
            cfg.params.sensitivity = inverse ? SensitivityLaw::inverse(1e4)
                                             : SensitivityLaw::logarithmic(1e4);
            cfg.params.production = ProductionLaw::power_shift(0.5);
            cfg.u_bar = 100.0;
            cfg.sigma = 10.0;
            p.runs.push_back({inverse ? "a_inverse" : "b_log", cfg});
        }
        return p;
    }

    if (name == "fig4a") {
        SweepSpec sweep;
        sweep.base = base_config();
        sweep.base.params.sensitivity = SensitivityLaw::constant(1e3);
        sweep.base.params.production = ProductionLaw::power_shift(0.5);
        sweep.base.u_bar = 10.0;
        sweep.base.sigma = 1.0;
        // Coarse 0.05 grid, refined to 0.01 around the homogeneous/spike
        // transition.
        sweep.beta_values = merge_betas(expand_range("0.30:0.80:0.05"),
                                        expand_range("0.35:0.45:0.01"));
        sweep.concurrency = 2;
        sweep.validate();
        p.sweep = sweep;
        return p;
    }

    if (name == "fig4b") {
        SweepSpec sweep;
        sweep.base = base_config();
        sweep.base.params.sensitivity = SensitivityLaw::inverse(1e4);
        sweep.base.params.production = ProductionLaw::power_shift(0.5);
        sweep.base.u_bar = 100.0;
        sweep.base.sigma = 10.0;
        // Coarse 0.05 grid, refined to 0.01 where the jump is expected.
        sweep.beta_values = merge_betas(expand_range("0.30:0.80:0.05"),
                                        expand_range("0.58:0.72:0.01"));
        sweep.concurrency = 2;
        sweep.validate();
        p.sweep = sweep;
        return p;
    }

    throw ValidationError("unknown preset '" + name +
                          "' (expected fig1|fig2|fig3|fig4a|fig4b)");
}

} // namespace chemo

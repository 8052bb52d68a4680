#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chemo/config.hpp"

namespace chemo {

/// One figure-reproduction preset: either a list of labelled single runs or
/// a beta sweep.
struct Preset {
    std::string name;
    struct Run {
        std::string label;
        SimConfig config;
    };
    std::vector<Run> runs;
    std::optional<SweepSpec> sweep;
};

/// Known presets: fig1, fig2, fig3, fig4a, fig4b. Throws ValidationError on
/// an unknown name.
Preset preset(const std::string& name);

std::vector<std::string> preset_names();

} // namespace chemo

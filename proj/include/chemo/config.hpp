#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "chemo/simulation.hpp"

namespace chemo {

/// A beta-sweep over otherwise fixed parameters: one run per (beta, seed).
struct SweepSpec {
    SimConfig base;
    std::vector<double> beta_values; // ascending, unique, in [0,1]
    int runs_per_beta = 1;
    int concurrency = 1;

    void validate() const;
};

using ParsedConfig = std::variant<SimConfig, SweepSpec>;

/// Strict key=value parser with [grid]/[model]/[init]/[control]/[events]/
/// [sweep] sections. Unknown sections or keys are errors; a [sweep] section
/// turns the result into a SweepSpec. '#' starts a comment.
ParsedConfig parse_config_stream(std::istream& is);
ParsedConfig parse_config(const std::string& path);

/// Expand "a:b:step" (inclusive, endpoint-snapped) or "x,y,z" into values.
std::vector<double> expand_range(const std::string& text);

/// Default-value documentation for --help.
std::string config_reference();

} // namespace chemo

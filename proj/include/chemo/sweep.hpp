#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "chemo/config.hpp"

namespace chemo {

struct SweepRow {
    double beta = 0.0;
    std::uint64_t seed = 0;
    OutcomeKind outcome = OutcomeKind::NumericalFailure;
    double final_max_u = 0.0;
    double heterogeneity = 0.0;
    double t_detect = 0.0; // 0 unless blow-up
    double wall_time_s = 0.0;
};

struct SweepSummary {
    std::vector<SweepRow> rows; // canonical (beta, seed) order
    /// Adjacent beta pair whose representative outcomes differ first.
    std::optional<std::pair<double, double>> bifurcation_bracket;
};

/// Runs all (beta, seed) pairs with at most spec.concurrency in flight.
/// Individual failures become NumericalFailure rows; the sweep finishes
/// regardless. Rows come back in canonical order, so concurrency never
/// changes the table.
SweepSummary run_sweep(const SweepSpec& spec);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Representative outcome per beta (majority over seeds, first seed breaks
/// ties); the bracket is the first adjacent pair that disagrees.
std::optional<std::pair<double, double>>
find_bifurcation_bracket(const std::vector<SweepRow>& rows);

} // namespace chemo

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "chemo/grid.hpp"
#include "chemo/integrator.hpp"
#include "chemo/model.hpp"

namespace chemo {

struct SimConfig {
    GridSpec grid{64, 64, 0.1, 0.1};
    ModelParams params;

    // Initial data u0 = |u_bar + sigma*eta|, eta cellwise uniform on [-1/2,1/2).
    double u_bar = 1.0;
    double sigma = 0.0;
    std::uint64_t seed = 0;

    // Event thresholds.
    double t_end = 100.0;
    double blowup_threshold = 1e10;
    double steady_rel_tol = 1e-7; // per unit time
    int steady_window = 50;       // consecutive accepted steps
    double heterogeneity_tol = 1e-3;

    StepController controller{};  // dt0 = 1e-8 via StepController defaults
    SolverSettings solver{};
    int diag_stride = 1;          // record every n-th accepted step

    void validate() const;
};

/// Per-time diagnostics snapshot.
struct DiagnosticsSample {
    double t = 0.0;
    double dt = 0.0;
    double mass = 0.0;
    double max_u = 0.0;
    double min_u = 0.0;
    double min_v = 0.0;
    double max_v = 0.0;
    double grad_energy = 0.0; // integral of |grad v|^2
    double err_est = 0.0;
};

enum class OutcomeKind {
    SteadyHomogeneous,
    SteadyHeterogeneous,
    BlowUp,
    HorizonReached,
    NumericalFailure,
};

std::string to_string(OutcomeKind k);

struct RunOutcome {
    OutcomeKind kind = OutcomeKind::HorizonReached;
    double t_detect = 0.0;        // blow-up detection time
    double max_u = 0.0;           // max_u at termination
    std::string failure_reason;   // NumericalFailure only
    DiagnosticsSample final_sample;
    double heterogeneity_ratio = 0.0; // (max_u - min_u)/mean_u at the end
    bool homogeneous_at_end = false;  // ratio < heterogeneity_tol
    bool production_outside_theory = false; // validate_production failed
    std::string production_violation;
    long steps_accepted = 0;
    long steps_rejected = 0;
};

struct RunResult {
    RunOutcome outcome;
    std::vector<DiagnosticsSample> timeseries;
    ScalarField final_u;
    ScalarField final_v;
};

/// Cellwise |u_bar + sigma*eta(i,j)| with counter-based noise: the same
/// (seed, grid) always reproduces the same field, bit for bit.
ScalarField init_u(const GridSpec& grid, double u_bar, double sigma,
                   std::uint64_t seed);

/// Initial signal: solve (I - Lap) v0 = g(u0).
ScalarField init_v(const ScalarField& u0, const ModelParams& params,
                   const SolverSettings& settings = {});

/// Called after every accepted step (regardless of diag_stride).
using SampleHook = std::function<void(const SimState&, const DiagnosticsSample&)>;

/// Full run: init, adaptive loop, diagnostics, event classification.
/// Failures are reported inside the outcome; run itself does not throw on
/// numerical trouble.
RunResult run(const SimConfig& config, const SampleHook& on_accept = {});

struct ConfirmRound {
    int refine_factor = 2; // per dimension
    RunOutcome outcome;
};

struct ConfirmResult {
    bool confirmed = false;
    RunOutcome refined_outcome; // last round
    std::vector<ConfirmRound> rounds;
};

/// Re-run a blow-up case on refined grids (2x per dimension per round) with
/// rtol tightened by 4x per round. Confirmed iff every refined run blows up
/// with a detection time within a factor 10 of the original. Throws
/// std::logic_error if `prior` is not a blow-up.
ConfirmResult confirm_blowup(const SimConfig& config, const RunOutcome& prior,
                             int rounds = 2);

} // namespace chemo

#pragma once

#include <string>

#include "chemo/elliptic.hpp"
#include "chemo/grid.hpp"
#include "chemo/model.hpp"

namespace chemo {

/// Adaptive step-size state and policy knobs.
struct StepController {
    double dt = 1e-8;
    double dt_min = 1e-14;
    double dt_max = 1.0;
    double rtol = 1e-4;  // step-doubling relative error target
    double cfl = 0.5;    // Courant factor in (0,1]
    double err_floor = 1e-3; // denominator floor, 1e-3 * u_bar at run setup

    static constexpr double shrink = 0.5;
    static constexpr double grow = 1.25;
    static constexpr double safety = 0.9;

    void validate() const;
};

/// Time-stepping solver tolerances. The signal solve uses elliptic_tol; the
/// implicit diffusion solve runs tighter because its residual is the only
/// leak in otherwise exact per-step mass conservation.
struct SolverSettings {
    double elliptic_tol = 1e-10;
    double diffusion_tol = 1e-12;
    int max_iter = 50000;
    Preconditioner precond = Preconditioner::Spectral;
};

struct SimState {
    double t = 0.0;
    ScalarField u;
    ScalarField v;
    long step_index = 0;
};

struct StepResult {
    SimState next;          // candidate state (kept two-half-step result)
    bool accepted = false;
    double err_est = 0.0;
    double cfl_dt = 0.0;    // advective step bound, +inf when the flux is zero
    std::string reject_reason;
};

/// One IMEX substep of size dt from (u,v):
///   flux F = u*chi(v)*grad v  (explicit, upwind)
///   (I - dt*Lap) u' = u - dt*div F   (implicit diffusion, CG)
///   (I - Lap) v' = g(u')             (quasi-static signal, CG)
/// Throws DomainViolation / NonConvergence; callers treat both as rejection.
void advance_imex(const ScalarField& u, const ScalarField& v, double dt,
                  const ModelParams& params, const HelmholtzSolver& solver,
                  const SolverSettings& settings, ScalarField& u_out,
                  ScalarField& v_out, double* max_speed = nullptr);

/// Full step attempt with step-doubling error control: one dt step against
/// two dt/2 steps; the two-half result is the kept candidate. Acceptance
/// needs err_est <= rtol, min(u) >= -1e-12*||u||_inf, and v inside the
/// sensitivity domain. Never throws; failures surface as rejections.
StepResult step(const SimState& state, const ModelParams& params,
                const StepController& ctrl, const HelmholtzSolver& solver,
                const SolverSettings& settings);

/// Controller update. Rejection halves dt (floored at dt_min); acceptance
/// grows it by at most `grow`, capped by the CFL bound and dt_max.
StepController adapt(StepController ctrl, bool accepted, double err_est,
                     double cfl_dt);

} // namespace chemo

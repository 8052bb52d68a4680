#include "chemo/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chemo/errors.hpp"
#include "chemo/kernels.hpp"

namespace chemo {

void StepController::validate() const {
    if (!(dt_min > 0.0) || !(dt_min <= dt_max))
        throw ValidationError("controller: need 0 < dt_min <= dt_max");
    if (!(dt >= dt_min && dt <= dt_max))
        throw ValidationError("controller: dt outside [dt_min, dt_max]");
    if (!(cfl > 0.0 && cfl <= 1.0))
        throw ValidationError("controller: cfl must be in (0,1]");
    if (!(rtol > 0.0 && rtol <= 1e-1))
        throw ValidationError("controller: rtol must be in (0, 1e-1]");
}

void advance_imex(const ScalarField& u, const ScalarField& v, double dt,
                  const ModelParams& params, const HelmholtzSolver& solver,
                  const SolverSettings& settings, ScalarField& u_out,
                  ScalarField& v_out, double* max_speed) {
    const FaceFluxField flux =
        chemotactic_flux(u, v, params.sensitivity, max_speed);

    // rhs = u - dt * div(flux); the divergence telescopes cell by cell, so
    // the explicit transport moves mass between cells without creating any.
    ScalarField rhs(u.grid);
    kern::divergence(flux, rhs);
    const int n = u.grid.cells();
    for (int k = 0; k < n; ++k)
        rhs.values[k] = u.values[k] - dt * rhs.values[k];

    auto [u_next, du_report] =
        solver.solve(rhs, settings.diffusion_tol, settings.max_iter, &u, dt);
    (void)du_report;

    const ScalarField w = apply_production(params.production, u_next);
    auto [v_next, dv_report] =
        solver.solve(w, settings.elliptic_tol, settings.max_iter, &v, 1.0);
    (void)dv_report;

    u_out = std::move(u_next);
    v_out = std::move(v_next);
}

StepResult step(const SimState& state, const ModelParams& params,
                const StepController& ctrl, const HelmholtzSolver& solver,
                const SolverSettings& settings) {
    StepResult result;
    result.cfl_dt = std::numeric_limits<double>::infinity();
    const double dt = ctrl.dt;

    try {
        double speed = 0.0;
        ScalarField u_full(state.u.grid), v_full(state.u.grid);
        advance_imex(state.u, state.v, dt, params, solver, settings, u_full,
                     v_full, &speed);
        if (speed > 0.0) {
            result.cfl_dt =
                ctrl.cfl * std::min(state.u.grid.hx(), state.u.grid.hy()) / speed;
        }

        ScalarField u_half(state.u.grid), v_half(state.u.grid);
        advance_imex(state.u, state.v, 0.5 * dt, params, solver, settings,
                     u_half, v_half);
        ScalarField u_two(state.u.grid), v_two(state.u.grid);
        advance_imex(u_half, v_half, 0.5 * dt, params, solver, settings, u_two,
                     v_two);

        const double base = kern::field_stats(state.u).linf + ctrl.err_floor;
        result.err_est = kern::max_abs_diff(u_full, u_two) / base;

        const FieldStats su = kern::field_stats(u_two);
        const FieldStats sv = kern::field_stats(v_two);
        if (!std::isfinite(su.linf) || !std::isfinite(sv.linf)) {
            result.reject_reason = "non-finite candidate state";
        } else if (result.err_est > ctrl.rtol) {
            result.reject_reason = "error estimate above rtol";
        } else if (su.min < -1e-12 * su.linf) {
            result.reject_reason = "positivity lost";
        } else if (!params.sensitivity.in_domain(sv.min)) {
            result.reject_reason = "v left the sensitivity domain";
        } else {
            result.accepted = true;
        }

        // Local extrapolation stays off: the two-half-step state is the one
        // carried forward, the cheap full step only feeds the estimate.
        result.next.t = state.t + dt;
        result.next.u = std::move(u_two);
        result.next.v = std::move(v_two);
        result.next.step_index = state.step_index + 1;
    } catch (const DomainViolation& e) {
        result.accepted = false;
        result.reject_reason = e.what();
        result.next = state;
    } catch (const NonConvergence& e) {
        result.accepted = false;
        result.reject_reason = e.what();
        result.next = state;
    }
    return result;
}

StepController adapt(StepController ctrl, bool accepted, double err_est,
                     double cfl_dt) {
    if (!accepted) {
        ctrl.dt = std::max(ctrl.dt_min, ctrl.dt * StepController::shrink);
        return ctrl;
    }
    double growth = StepController::grow;
    if (err_est > 0.0)
        growth = std::min(growth,
                          StepController::safety * std::sqrt(ctrl.rtol / err_est));
    double dt = std::min(ctrl.dt_max, std::min(cfl_dt, ctrl.dt * growth));
    ctrl.dt = std::max(ctrl.dt_min, dt);
    return ctrl;
}

} // namespace chemo

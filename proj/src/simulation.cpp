#include "chemo/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "chemo/errors.hpp"
#include "chemo/kernels.hpp"
#include "chemo/rng.hpp"

namespace chemo {

void SimConfig::validate() const {
    if (grid.nx < 2 || grid.ny < 2)
        throw ValidationError("config: simulation grid needs nx, ny >= 2");
    if (!(u_bar > 0.0)) throw ValidationError("config: u_bar must be > 0");
    if (!(sigma >= 0.0)) throw ValidationError("config: sigma must be >= 0");
    if (!(t_end > 0.0)) throw ValidationError("config: t_end must be > 0");
    if (!(blowup_threshold > 0.0))
        throw ValidationError("config: blowup_threshold must be > 0");
    if (!(steady_rel_tol > 0.0))
        throw ValidationError("config: steady_rel_tol must be > 0");
    if (steady_window < 1)
        throw ValidationError("config: steady_window must be >= 1");
    if (!(heterogeneity_tol > 0.0))
        throw ValidationError("config: heterogeneity_tol must be > 0");
    if (diag_stride < 1) throw ValidationError("config: diag_stride must be >= 1");
    controller.validate();
}

std::string to_string(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::SteadyHomogeneous: return "steady_homogeneous";
        case OutcomeKind::SteadyHeterogeneous: return "steady_heterogeneous";
        case OutcomeKind::BlowUp: return "blow_up";
        case OutcomeKind::HorizonReached: return "horizon_reached";
        case OutcomeKind::NumericalFailure: return "numerical_failure";
    }
    return "?";
}

ScalarField init_u(const GridSpec& grid, double u_bar, double sigma,
                   std::uint64_t seed) {
    if (!(u_bar > 0.0)) throw ValidationError("init_u: u_bar must be > 0");
    if (!(sigma >= 0.0)) throw ValidationError("init_u: sigma must be >= 0");
    ScalarField u(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            u.at(i, j) = std::abs(u_bar + sigma * cell_noise(seed, i, j));
    return u;
}

ScalarField init_v(const ScalarField& u0, const ModelParams& params,
                   const SolverSettings& settings) {
    const ScalarField w = apply_production(params.production, u0);
    HelmholtzSolver solver(u0.grid, settings.precond);
    auto [v, report] = solver.solve(w, settings.elliptic_tol, settings.max_iter,
                                    &w, 1.0);
    (void)report;
    return v;
}

namespace {

DiagnosticsSample make_sample(const SimState& state, double dt, double err_est) {
    const FieldStats su = kern::field_stats(state.u);
    const FieldStats sv = kern::field_stats(state.v);
    DiagnosticsSample s;
    s.t = state.t;
    s.dt = dt;
    s.mass = kern::integrate(state.u);
    s.max_u = su.max;
    s.min_u = su.min;
    s.min_v = sv.min;
    s.max_v = sv.max;
    s.grad_energy = kern::gradient_energy(state.v);
    s.err_est = err_est;
    return s;
}

double heterogeneity(const DiagnosticsSample& s, const GridSpec& grid) {
    const double mean = s.mass / grid.area();
    if (mean == 0.0) return 0.0;
    return (s.max_u - s.min_u) / mean;
}

} // namespace

RunResult run(const SimConfig& config, const SampleHook& on_accept) {
    config.validate();

    RunResult result;
    RunOutcome& outcome = result.outcome;

    // The theory needs g bounded away from zero; the linear law is still
    // runnable but gets flagged.
    {
        const std::vector<double> samples = {0.0, 0.5, 1.0, 10.0, 1e3, 1e6};
        const ProductionValidation pv =
            validate_production(config.params.production, samples);
        outcome.production_outside_theory = !pv.ok;
        outcome.production_violation = pv.violation;
    }

    SimState state;
    state.u = init_u(config.grid, config.u_bar, config.sigma, config.seed);
    state.v = ScalarField(config.grid); // replaced by the initial signal solve

    HelmholtzSolver solver(config.grid, config.solver.precond);
    StepController ctrl = config.controller;
    ctrl.err_floor = 1e-3 * config.u_bar;

    try {
        const ScalarField w = apply_production(config.params.production, state.u);
        auto [v0, rep] = solver.solve(w, config.solver.elliptic_tol,
                                      config.solver.max_iter, &w, 1.0);
        (void)rep;
        state.v = std::move(v0);
    } catch (const std::exception& e) {
        outcome.kind = OutcomeKind::NumericalFailure;
        outcome.failure_reason = std::string("initial signal solve: ") + e.what();
        result.timeseries.push_back(make_sample(state, ctrl.dt, 0.0));
        outcome.final_sample = result.timeseries.back();
        result.final_u = std::move(state.u);
        result.final_v = std::move(state.v);
        return result;
    }

    result.timeseries.push_back(make_sample(state, ctrl.dt, 0.0));

    int steady_count = 0;
    std::deque<double> max_u_trend; // recent accepted max_u, for dt-exhaustion
    bool done = false;
    long accepted_since_sample = 0;

    auto finish = [&](OutcomeKind kind) {
        outcome.kind = kind;
        done = true;
    };

    while (!done) {
        if (state.t >= config.t_end) {
            finish(OutcomeKind::HorizonReached);
            break;
        }
        // Never step past the horizon.
        if (state.t + ctrl.dt > config.t_end)
            ctrl.dt = std::max(ctrl.dt_min, config.t_end - state.t);

        const StepResult sr = step(state, config.params, ctrl, solver,
                                   config.solver);

        if (!sr.accepted) {
            ++outcome.steps_rejected;
            if (ctrl.dt <= ctrl.dt_min * (1.0 + 1e-12)) {
                // Step size exhausted. A monotone climb in max_u marks this
                // as blow-up outrunning the mesh; anything else is failure.
                bool climbing = max_u_trend.size() >= 2;
                for (std::size_t k = 0; climbing && k + 1 < max_u_trend.size(); ++k)
                    climbing = max_u_trend[k] < max_u_trend[k + 1];
                if (climbing) {
                    outcome.t_detect = state.t;
                    outcome.max_u = kern::field_stats(state.u).max;
                    finish(OutcomeKind::BlowUp);
                } else {
                    outcome.failure_reason =
                        "dt exhausted at dt_min: " + sr.reject_reason;
                    finish(OutcomeKind::NumericalFailure);
                }
                break;
            }
            ctrl = adapt(ctrl, false, sr.err_est, sr.cfl_dt);
            continue;
        }

        // Accepted: measure the change rate before overwriting the state.
        const double change = kern::max_abs_diff(sr.next.u, state.u);
        const double dt_used = sr.next.t - state.t;
        const double base = kern::field_stats(state.u).linf + ctrl.err_floor;
        const double rate = change / (dt_used * base);

        state = sr.next;
        ++outcome.steps_accepted;

        const FieldStats su = kern::field_stats(state.u);
        max_u_trend.push_back(su.max);
        if (max_u_trend.size() > 5) max_u_trend.pop_front();

        ++accepted_since_sample;
        const bool record = accepted_since_sample >= config.diag_stride;
        if (record || on_accept) {
            const DiagnosticsSample sample = make_sample(state, dt_used, sr.err_est);
            if (record) {
                accepted_since_sample = 0;
                result.timeseries.push_back(sample);
            }
            if (on_accept) on_accept(state, sample);
        }

        if (!std::isfinite(su.max)) {
            outcome.failure_reason = "state became non-finite";
            finish(OutcomeKind::NumericalFailure);
            break;
        }

        if (su.max >= config.blowup_threshold) {
            outcome.t_detect = state.t;
            outcome.max_u = su.max;
            finish(OutcomeKind::BlowUp);
            break;
        }

        if (rate < config.steady_rel_tol) {
            if (++steady_count >= config.steady_window) {
                const DiagnosticsSample s = make_sample(state, dt_used, sr.err_est);
                const double ratio = heterogeneity(s, config.grid);
                finish(ratio < config.heterogeneity_tol
                           ? OutcomeKind::SteadyHomogeneous
                           : OutcomeKind::SteadyHeterogeneous);
                break;
            }
        } else {
            steady_count = 0;
        }

        ctrl = adapt(ctrl, true, sr.err_est, sr.cfl_dt);
    }

    // Always end the series with the terminal state.
    const DiagnosticsSample last = make_sample(state, ctrl.dt, 0.0);
    if (result.timeseries.empty() || result.timeseries.back().t != last.t)
        result.timeseries.push_back(last);
    outcome.final_sample = result.timeseries.back();
    outcome.max_u = std::max(outcome.max_u, last.max_u);
    outcome.heterogeneity_ratio = heterogeneity(last, config.grid);
    outcome.homogeneous_at_end =
        outcome.heterogeneity_ratio < config.heterogeneity_tol;

    result.final_u = std::move(state.u);
    result.final_v = std::move(state.v);
    return result;
}

ConfirmResult confirm_blowup(const SimConfig& config, const RunOutcome& prior,
                             int rounds) {
    if (prior.kind != OutcomeKind::BlowUp)
        throw std::logic_error("confirm_blowup: prior outcome is not blow-up");
    if (rounds < 1) throw std::logic_error("confirm_blowup: rounds must be >= 1");

    ConfirmResult result;
    result.confirmed = true;
    for (int r = 1; r <= rounds; ++r) {
        const int factor = 1 << r;
        SimConfig fine = config;
        fine.grid = GridSpec(config.grid.nx * factor, config.grid.ny * factor,
                             config.grid.lx, config.grid.ly);
        fine.controller.rtol = config.controller.rtol / std::pow(4.0, r);

        const RunResult rr = run(fine);
        ConfirmRound round;
        round.refine_factor = factor;
        round.outcome = rr.outcome;
        const bool also_blows = rr.outcome.kind == OutcomeKind::BlowUp;
        const bool time_matches =
            also_blows && prior.t_detect > 0.0 &&
            rr.outcome.t_detect / prior.t_detect <= 10.0 &&
            rr.outcome.t_detect / prior.t_detect >= 0.1;
        if (!(also_blows && time_matches)) result.confirmed = false;
        result.rounds.push_back(round);
        result.refined_outcome = rr.outcome;
    }
    return result;
}

} // namespace chemo

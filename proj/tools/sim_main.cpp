// Command-line front end: single runs, figure presets, and beta sweeps.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "chemo/config.hpp"
#include "chemo/errors.hpp"
#include "chemo/field_io.hpp"
#include "chemo/presets.hpp"
#include "chemo/simulation.hpp"
#include "chemo/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonFlags {
    int grid = 0;        // override nx = ny
    std::int64_t seed = -1;
    double t_end = 0.0;
    int threads = 0;
    std::string out_dir;
    std::vector<double> dump_times;
};

void apply_overrides(chemo::SimConfig& cfg, const CommonFlags& flags) {
    if (flags.grid > 0)
        cfg.grid = chemo::GridSpec(flags.grid, flags.grid, cfg.grid.lx, cfg.grid.ly);
    if (flags.seed >= 0) cfg.seed = static_cast<std::uint64_t>(flags.seed);
    if (flags.t_end > 0.0) cfg.t_end = flags.t_end;
}

void set_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

json config_echo(const chemo::SimConfig& cfg) {
    json j;
    j["grid"] = {{"nx", cfg.grid.nx},
                 {"ny", cfg.grid.ny},
                 {"lx", cfg.grid.lx},
                 {"ly", cfg.grid.ly}};
    j["model"] = {{"sensitivity", cfg.params.sensitivity.name()},
                  {"chi", cfg.params.sensitivity.chi0},
                  {"k", cfg.params.sensitivity.k},
                  {"production", cfg.params.production.name()},
                  {"beta", cfg.params.production.beta},
                  {"lambda1", cfg.params.production.lambda1},
                  {"lambda2", cfg.params.production.lambda2}};
    j["init"] = {{"u_bar", cfg.u_bar}, {"sigma", cfg.sigma}, {"seed", cfg.seed}};
    j["control"] = {{"dt0", cfg.controller.dt},
                    {"dt_min", cfg.controller.dt_min},
                    {"dt_max", cfg.controller.dt_max},
                    {"rtol", cfg.controller.rtol},
                    {"cfl", cfg.controller.cfl},
                    {"diag_stride", cfg.diag_stride},
                    {"elliptic_tol", cfg.solver.elliptic_tol}};
    j["events"] = {{"t_end", cfg.t_end},
                   {"blowup_threshold", cfg.blowup_threshold},
                   {"steady_rel_tol", cfg.steady_rel_tol},
                   {"steady_window", cfg.steady_window},
                   {"heterogeneity_tol", cfg.heterogeneity_tol}};
    return j;
}

json sample_json(const chemo::DiagnosticsSample& s) {
    return json{{"t", s.t},           {"dt", s.dt},
                {"mass", s.mass},     {"max_u", s.max_u},
                {"min_u", s.min_u},   {"min_v", s.min_v},
                {"max_v", s.max_v},   {"grad_energy", s.grad_energy},
                {"err_est", s.err_est}};
}

void write_timeseries(const std::string& path,
                      const std::vector<chemo::DiagnosticsSample>& series) {
    std::ofstream os(path);
    os << "t,dt,mass,max_u,min_u,min_v,max_v,grad_energy,err_est\n";
    os << std::setprecision(17);
    for (const auto& s : series)
        os << s.t << ',' << s.dt << ',' << s.mass << ',' << s.max_u << ','
           << s.min_u << ',' << s.min_v << ',' << s.max_v << ',' << s.grad_energy
           << ',' << s.err_est << '\n';
}

std::string format_time_tag(double t) {
    std::ostringstream ss;
    ss << std::setprecision(12) << t;
    return ss.str();
}

/// Runs one configuration, writing timeseries.csv / outcome.json /
/// final fields / requested dumps under dir (if non-empty).
chemo::RunOutcome execute_run(const chemo::SimConfig& cfg, const std::string& dir,
                              const std::vector<double>& dump_times) {
    if (!dir.empty()) fs::create_directories(dir);
    std::vector<double> pending = dump_times;
    std::sort(pending.begin(), pending.end());
    std::size_t next_dump = 0;

    chemo::SampleHook hook;
    if (!dir.empty() && !pending.empty()) {
        hook = [&](const chemo::SimState& state, const chemo::DiagnosticsSample&) {
            while (next_dump < pending.size() && state.t >= pending[next_dump]) {
                chemo::write_field(
                    dir + "/fields_t" + format_time_tag(pending[next_dump]) + ".dat",
                    state.u);
                ++next_dump;
            }
        };
    }

    const auto t0 = std::chrono::steady_clock::now();
    const chemo::RunResult rr = chemo::run(cfg, hook);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const chemo::RunOutcome& oc = rr.outcome;
    std::cout << "outcome: " << chemo::to_string(oc.kind)
              << "  t=" << rr.outcome.final_sample.t << "  max_u=" << oc.max_u
              << "  heterogeneity=" << oc.heterogeneity_ratio << "  steps="
              << oc.steps_accepted << "(+" << oc.steps_rejected << " rejected)"
              << "  wall=" << wall << "s\n";
    if (oc.kind == chemo::OutcomeKind::BlowUp)
        std::cout << "blow-up detected at t=" << oc.t_detect << "\n";
    if (oc.production_outside_theory)
        std::cout << "note: production law violates the boundedness hypotheses ("
                  << oc.production_violation << ")\n";

    if (!dir.empty()) {
        write_timeseries(dir + "/timeseries.csv", rr.timeseries);
        chemo::write_field(dir + "/final_u.dat", rr.final_u);
        chemo::write_field(dir + "/final_v.dat", rr.final_v);

        const double mass0 = rr.timeseries.front().mass;
        json j;
        j["outcome"] = chemo::to_string(oc.kind);
        j["t_detect"] = oc.t_detect;
        j["max_u"] = oc.max_u;
        j["failure_reason"] = oc.failure_reason;
        j["heterogeneity_ratio"] = oc.heterogeneity_ratio;
        j["homogeneous_at_end"] = oc.homogeneous_at_end;
        j["production_outside_theory"] = oc.production_outside_theory;
        j["production_violation"] = oc.production_violation;
        j["final"] = sample_json(oc.final_sample);
        j["mass_initial"] = mass0;
        j["mass_drift_rel"] =
            mass0 != 0.0 ? std::abs(oc.final_sample.mass - mass0) / std::abs(mass0)
                         : 0.0;
        j["steps_accepted"] = oc.steps_accepted;
        j["steps_rejected"] = oc.steps_rejected;
        j["wall_time_s"] = wall;
        j["config"] = config_echo(cfg);
        std::ofstream os(dir + "/outcome.json");
        os << j.dump(2) << '\n';
    }
    return oc;
}

int execute_sweep(chemo::SweepSpec spec, const CommonFlags& flags) {
    apply_overrides(spec.base, flags);
    if (flags.threads > 0) spec.concurrency = flags.threads;
    spec.validate();

    std::cout << "sweep: " << spec.beta_values.size() << " beta values x "
              << spec.runs_per_beta << " seed(s), concurrency " << spec.concurrency
              << "\n";
    const chemo::SweepSummary summary = chemo::run_sweep(spec);

    std::ostringstream table;
    chemo::write_sweep_csv(table, summary.rows);
    std::cout << table.str();
    if (summary.bifurcation_bracket) {
        std::cout << "bifurcation bracket: beta in ["
                  << summary.bifurcation_bracket->first << ", "
                  << summary.bifurcation_bracket->second << "]\n";
    } else {
        std::cout << "bifurcation bracket: none (all outcomes agree)\n";
    }

    if (!flags.out_dir.empty()) {
        fs::create_directories(flags.out_dir);
        std::ofstream os(flags.out_dir + "/sweep.csv");
        os << table.str();
        json j;
        j["rows"] = summary.rows.size();
        if (summary.bifurcation_bracket)
            j["bifurcation_bracket"] = {summary.bifurcation_bracket->first,
                                        summary.bifurcation_bracket->second};
        std::ofstream js(flags.out_dir + "/sweep_summary.json");
        js << j.dump(2) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-D chemotaxis simulator: u_t = div(grad u - u chi(v) grad v), "
                 "0 = lap v - v + g(u), insulated boundaries"};
    app.footer(chemo::config_reference());
    app.require_subcommand(1);

    CommonFlags flags;
    std::string config_path;
    std::string preset_name;
    std::string dump_list;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--grid", flags.grid, "Override nx = ny");
        cmd->add_option("--seed", flags.seed, "Override the noise seed");
        cmd->add_option("--t-end", flags.t_end, "Override the time horizon");
        cmd->add_option("--threads", flags.threads,
                        "Kernel threads / sweep concurrency");
        cmd->add_option("--out", flags.out_dir, "Output directory");
        cmd->add_option("--dump-fields", dump_list,
                        "Comma-separated times at which to dump u");
    };

    CLI::App* cmd_run = app.add_subcommand("run", "Run a single configuration");
    cmd_run->add_option("config", config_path, "Config file")->required();
    add_common(cmd_run);

    CLI::App* cmd_preset =
        app.add_subcommand("preset", "Run a figure-reproduction preset");
    cmd_preset->add_option("name", preset_name, "fig1|fig2|fig3|fig4a|fig4b")
        ->required();
    add_common(cmd_preset);

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "Run a beta sweep");
    cmd_sweep->add_option("config", config_path, "Config file with a [sweep] section")
        ->required();
    add_common(cmd_sweep);

    CLI11_PARSE(app, argc, argv);

    set_threads(flags.threads);
    if (!dump_list.empty()) {
        std::istringstream ss(dump_list);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) flags.dump_times.push_back(std::stod(item));
    }

    try {
        if (cmd_run->parsed()) {
            chemo::ParsedConfig parsed = chemo::parse_config(config_path);
            if (std::holds_alternative<chemo::SweepSpec>(parsed)) {
                std::cerr << "error: config has a [sweep] section; use `sim sweep`\n";
                return 1;
            }
            chemo::SimConfig cfg = std::get<chemo::SimConfig>(parsed);
            apply_overrides(cfg, flags);
            cfg.validate();
            const chemo::RunOutcome oc =
                execute_run(cfg, flags.out_dir, flags.dump_times);
            return oc.kind == chemo::OutcomeKind::NumericalFailure ? 2 : 0;
        }

        if (cmd_sweep->parsed()) {
            chemo::ParsedConfig parsed = chemo::parse_config(config_path);
            if (!std::holds_alternative<chemo::SweepSpec>(parsed)) {
                std::cerr << "error: config lacks a [sweep] section; use `sim run`\n";
                return 1;
            }
            return execute_sweep(std::get<chemo::SweepSpec>(parsed), flags);
        }

        if (cmd_preset->parsed()) {
            const chemo::Preset p = chemo::preset(preset_name);
            bool any_failure = false;
            for (const auto& r : p.runs) {
                chemo::SimConfig cfg = r.config;
                apply_overrides(cfg, flags);
                std::cout << "[" << p.name << "/" << r.label << "]\n";
                const std::string dir = flags.out_dir.empty()
                                            ? std::string()
                                            : flags.out_dir + "/" + p.name + "/" +
                                                  r.label;
                const chemo::RunOutcome oc = execute_run(cfg, dir, flags.dump_times);
                any_failure |= oc.kind == chemo::OutcomeKind::NumericalFailure;
            }
            if (p.sweep) {
                CommonFlags sweep_flags = flags;
                if (!flags.out_dir.empty())
                    sweep_flags.out_dir = flags.out_dir + "/" + p.name;
                execute_sweep(*p.sweep, sweep_flags);
            }
            return any_failure && p.runs.size() == 1 ? 2 : 0;
        }
    } catch (const chemo::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const chemo::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

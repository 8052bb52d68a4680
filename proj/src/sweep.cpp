#include "chemo/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <thread>

namespace chemo {

SweepSummary run_sweep(const SweepSpec& spec) {
    spec.validate();

    struct Job {
        double beta;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (double beta : spec.beta_values)
        for (int r = 0; r < spec.runs_per_beta; ++r)
            jobs.push_back({beta, spec.base.seed + static_cast<std::uint64_t>(r)});

    std::vector<SweepRow> rows(jobs.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= jobs.size()) return;
            const Job& job = jobs[k];

            SimConfig cfg = spec.base;
            cfg.params.production.beta = job.beta;
            cfg.seed = job.seed;
            cfg.diag_stride = 1000; // sweeps keep only the endpoint state

            SweepRow row;
            row.beta = job.beta;
            row.seed = job.seed;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const RunResult rr = run(cfg);
                row.outcome = rr.outcome.kind;
                row.final_max_u = rr.outcome.final_sample.max_u;
                row.heterogeneity = rr.outcome.heterogeneity_ratio;
                if (rr.outcome.kind == OutcomeKind::BlowUp)
                    row.t_detect = rr.outcome.t_detect;
            } catch (const std::exception&) {
                row.outcome = OutcomeKind::NumericalFailure;
            }
            row.wall_time_s = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            rows[k] = row;
        }
    };

    const int nthreads =
        std::max(1, std::min<int>(spec.concurrency, static_cast<int>(jobs.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SweepSummary summary;
    summary.rows = std::move(rows);
    summary.bifurcation_bracket = find_bifurcation_bracket(summary.rows);
    return summary;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "beta,seed,outcome,final_max_u,heterogeneity,t_detect,wall_time_s\n";
    os << std::setprecision(17);
    for (const SweepRow& r : rows) {
        os << r.beta << ',' << r.seed << ',' << to_string(r.outcome) << ','
           << r.final_max_u << ',' << r.heterogeneity << ',';
        if (r.outcome == OutcomeKind::BlowUp) os << r.t_detect;
        os << ',' << r.wall_time_s << '\n';
    }
}

std::optional<std::pair<double, double>>
find_bifurcation_bracket(const std::vector<SweepRow>& rows) {
    // Majority outcome per beta; seeds tie-break toward the first row.
    std::map<double, std::map<OutcomeKind, int>> votes;
    std::map<double, OutcomeKind> first_seen;
    for (const SweepRow& r : rows) {
        votes[r.beta][r.outcome]++;
        first_seen.emplace(r.beta, r.outcome);
    }
    std::vector<std::pair<double, OutcomeKind>> rep;
    for (const auto& [beta, counts] : votes) {
        OutcomeKind best = first_seen.at(beta);
        int best_count = counts.at(best);
        for (const auto& [kind, count] : counts)
            if (count > best_count) best = kind, best_count = count;
        rep.emplace_back(beta, best);
    }
    for (std::size_t k = 1; k < rep.size(); ++k)
        if (rep[k].second != rep[k - 1].second)
            return std::make_pair(rep[k - 1].first, rep[k].first);
    return std::nullopt;
}

} // namespace chemo

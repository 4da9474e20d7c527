#include "dlsa/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "dlsa/csv.hpp"

namespace dlsa {

SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.V_values.empty())
        throw std::invalid_argument("sweep: V_values must be nonempty");
    for (double v : spec.V_values)
        if (!(v >= 1))
            throw std::invalid_argument("sweep: every V must be >= 1");
    if (spec.seeds.empty())
        throw std::invalid_argument("sweep: seeds must be nonempty");

    auto v_sorted = spec.V_values;
    std::sort(v_sorted.begin(), v_sorted.end());
    v_sorted.erase(std::unique(v_sorted.begin(), v_sorted.end()), v_sorted.end());
    auto seeds_sorted = spec.seeds;
    std::sort(seeds_sorted.begin(), seeds_sorted.end());
    seeds_sorted.erase(std::unique(seeds_sorted.begin(), seeds_sorted.end()),
                       seeds_sorted.end());

    SweepResult result;
    for (double v : v_sorted)
        for (uint64_t s : seeds_sorted)
            result.rows.push_back({v, s, {}, false, {}});

    // Runs are pure functions of (config, V, seed); each worker writes only
    // its own preallocated row, so any interleaving yields the same result.
    std::atomic<size_t> cursor{0};
    auto work = [&]() {
        for (;;) {
            const size_t i = cursor.fetch_add(1);
            if (i >= result.rows.size()) return;
            SweepRow& row = result.rows[i];
            NetworkConfig cfg = spec.base;
            cfg.control_V = row.V;
            cfg.seed = row.seed;
            if (spec.horizon_override) cfg.horizon = *spec.horizon_override;
            RunOptions opts;
            opts.exact_edge_limit = spec.exact_edge_limit;
            try {
                row.metrics = run(cfg, opts);
            } catch (const std::exception& e) {
                row.failed = true;
                row.error = e.what();
            }
        }
    };

    const int workers = std::clamp<int>(spec.workers, 1,
                                        static_cast<int>(result.rows.size()));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    std::vector<std::pair<double, RunMetrics>> ok;
    for (auto& row : result.rows) {
        if (row.failed)
            result.any_failed = true;
        else
            ok.emplace_back(row.V, row.metrics);
    }
    try {
        result.report = diagnose_sweep(ok, spec.base);
    } catch (const std::invalid_argument& e) {
        result.report.flags.push_back(std::string("report unavailable: ") + e.what());
    }
    return result;
}

std::string sweep_rows_to_csv(const SweepResult& result) {
    std::string out = "V,seed,avg_utility,avg_backlog,stability_stat,max_avg_power\n";
    for (const auto& row : result.rows) {
        if (row.failed) continue;
        out += csv_join({csv_double(row.V), std::to_string(row.seed),
                         csv_double(row.metrics.avg_utility),
                         csv_double(row.metrics.avg_backlog),
                         csv_double(row.metrics.stability_stat),
                         csv_double(row.metrics.max_avg_power())});
        out += "\n";
    }
    return out;
}

std::string summary_csv(const NetworkConfig& cfg, const RunMetrics& m) {
    double delivered = 0;
    for (double d : m.delivered.data()) delivered += d;
    std::string out =
        "config,V,seed,horizon,avg_utility,avg_slot_utility,avg_backlog,"
        "stability_stat,max_avg_power,delivered_total,selector\n";
    out += csv_join({structural_hash(cfg), csv_double(cfg.control_V),
                     std::to_string(cfg.seed), std::to_string(m.horizon),
                     csv_double(m.avg_utility), csv_double(m.avg_slot_utility),
                     csv_double(m.avg_backlog), csv_double(m.stability_stat),
                     csv_double(m.max_avg_power()), csv_double(delivered),
                     m.exact_selection ? "exact" : "greedy"});
    out += "\n";
    return out;
}

}  // namespace dlsa

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dlsa/analysis.hpp"
#include "dlsa/config.hpp"
#include "dlsa/engine.hpp"

namespace dlsa {

struct SweepSpec {
    NetworkConfig base;
    std::vector<double> V_values;  // nonempty, all >= 1
    std::vector<uint64_t> seeds;   // nonempty
    std::optional<int64_t> horizon_override;
    std::optional<int> exact_edge_limit;
    int workers = 1;
};

struct SweepRow {
    double V = 0;
    uint64_t seed = 0;
    RunMetrics metrics;
    bool failed = false;
    std::string error;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // sorted by (V, seed)
    TheoryReport report;
    bool any_failed = false;
};

/// Run every (V, seed) combination. Runs execute concurrently up to
/// spec.workers; a failed run is recorded and the others continue. The
/// report aggregates the successful rows.
SweepResult run_sweep(const SweepSpec& spec);

/// CSV with one row per (V, seed), sorted, LF line endings.
std::string sweep_rows_to_csv(const SweepResult& result);

/// One-run summary row keyed by (config hash, V, seed).
std::string summary_csv(const NetworkConfig& cfg, const RunMetrics& m);

}  // namespace dlsa

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dlsa/config.hpp"
#include "dlsa/engine.hpp"

namespace dlsa {

/// Drift-bound constant of the quadratic Lyapunov argument:
/// N^2 * (1.5 * d_i^2 * mu_max^2 + R_max^2) + N * 0.5 * (P_max + P_tot)^2.
/// The steady-state utility gap is bounded by B / V.
double compute_B(const NetworkConfig& cfg);

/// Seed-averaged summary for one sweep point.
struct VSummary {
    double V = 0;
    double avg_utility = 0;
    double avg_backlog = 0;
    double stability_stat = 0;
    double max_avg_power = 0;
    double gap_bound = 0;  // B / V
    // utility(V) >= utility(V_max) - B/V, with the largest-V run standing in
    // for the optimum. Diagnostic, not asserted: the bound is loose.
    bool gap_ok = true;
};

struct TheoryReport {
    double B = 0;
    double gap_bound = 0;  // B / V_max, the tightest bound demonstrated
    double mu_max = 0;
    double delta_witness = 0;  // from the rate property check
    std::vector<VSummary> per_V;
    std::vector<std::string> flags;  // trend violations worth a look
};

/// Aggregate per-V seed means, check the expected trends (utility
/// nondecreasing within 2% relative noise, backlog growing), and attach the
/// gap diagnostics. Throws std::invalid_argument with fewer than 2 distinct
/// V points.
TheoryReport diagnose_sweep(
    const std::vector<std::pair<double, RunMetrics>>& runs,
    const NetworkConfig& cfg);

std::string report_to_text(const TheoryReport& r);
std::string report_to_csv(const TheoryReport& r);

}  // namespace dlsa

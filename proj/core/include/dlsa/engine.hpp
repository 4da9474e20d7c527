#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlsa/scheduler.hpp"

namespace dlsa {

/// Physical backlogs Q (N x C, packets) and per-node power-debt queues Z.
/// Row Q(c, k) is pinned to zero when node c is commodity k's destination.
struct QueueState {
    Mat<double> Q;
    std::vector<double> Z;

    static QueueState zeros(int nodes, int commodities);
};

/// Internal-consistency failure (negative queue, invariant breach). Carries
/// a multi-line diagnostic dump for post-mortem.
struct EngineFault : std::runtime_error {
    explicit EngineFault(const std::string& msg, std::string diag = {})
        : std::runtime_error(msg), diagnostic(std::move(diag)) {}
    std::string diagnostic;
};

/// One trace row, sampled at slot start (decision fields belong to the slot
/// that starts there).
struct SlotRecord {
    int64_t slot = 0;
    double total_backlog = 0;
    std::vector<double> Z;
    double objective = 0;
    double admitted_sum = 0;
};

struct RunMetrics {
    Mat<double> avg_admitted;       // N x C time-averaged admissions
    double avg_utility = 0;         // sum of U over time-averaged rates
    double avg_slot_utility = 0;    // time average of per-slot utility, for comparison
    double avg_backlog = 0;         // time average of total backlog
    std::vector<double> avg_power;  // per-node time-averaged output power
    Mat<double> delivered;          // N x C packets absorbed at destinations
    Mat<double> admitted_total;     // N x C cumulative admissions
    double stability_stat = 0;      // max over (n,c) of Q(T)/T
    std::vector<double> final_Z;
    Mat<double> final_Q;
    int64_t horizon = 0;
    // false when the edge count exceeded the enumeration guard and the
    // greedy selector ran instead; such runs are approximate
    bool exact_selection = true;

    double max_avg_power() const;
};

struct StepResult {
    QueueState state;      // slot-end queues
    SlotDecision decision;
    SlotRecord record;
    Mat<double> delivered;  // this slot's absorbed packets
};

/// One DLSA slot: sample channel, admit, weigh, select links (exact when the
/// edge count fits the enumeration guard, greedy otherwise), route, update
/// queues.
StepResult step(const QueueState& state, const NetworkConfig& cfg,
                const Graph& g, const RateFunction& rate, int64_t slot,
                uint64_t seed, const DegreeLimits& limits);

struct QueueUpdate {
    QueueState next;
    Mat<double> delivered;  // N x C absorbed at destinations this slot
};

/// Exact-transfer queue update: a link moves min(its allocated rate, its
/// proportional share of the backlog); allocation beyond backlog is idle
/// capacity. Transfers land at the receiver next slot (all moves are
/// computed from the slot-start state). Faults on a negative queue.
QueueUpdate update_queues(const QueueState& state, const SlotDecision& d,
                          const NetworkConfig& cfg, const Graph& g);

/// Z_n' = [Z_n - P_tot]^+ + sum_b p_nb * gamma_nb.
std::vector<double> update_virtual(const std::vector<double>& Z,
                                   const SlotDecision& d,
                                   double avg_power_budget);

using SlotObserver = std::function<void(
    const SlotRecord&, const QueueState& /* slot start */, const SlotDecision&)>;

struct RunOptions {
    std::optional<int> exact_edge_limit;  // overrides the default guard of 20
    bool validate = false;                // per-slot invariant checks + conservation
    SlotObserver observer;                // called once per slot
};

/// Run the slot loop for cfg.horizon slots and aggregate metrics.
RunMetrics run(const NetworkConfig& cfg, const RunOptions& opts = {});

/// Slot-level assertions: connection symmetry/degrees, power bounds, rate
/// budget per link, admission bounds, queue nonnegativity, and the queueing
/// inequality relating consecutive states. Throws EngineFault on breach.
void check_slot_invariants(const QueueState& before, const SlotDecision& d,
                           const QueueState& after, const ChannelState& s,
                           const NetworkConfig& cfg, const Graph& g,
                           const RateFunction& rate, int64_t slot);

}  // namespace dlsa

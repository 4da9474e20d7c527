#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dlsa {

enum class UtilityKind {
    Log,   // ln(1 + r), closed-form admission
    Sqrt,  // sqrt(r), solved by golden-section search
};

enum class RateKind {
    LogLinear,  // mu = ln(1 + alpha * p * gamma)
};

/// One entry of the per-link channel-state distribution.
struct ChannelStateDef {
    std::string label;  // e.g. "G"
    double alpha = 0;   // link-state factor
    double prob = 0;
};

/// Static description of a network instance. Immutable once built; all
/// simulation state lives elsewhere.
struct NetworkConfig {
    int node_count = 0;
    std::vector<std::pair<int, int>> links;  // directed (i, j), i != j

    int out_degree_limit = 1;  // max simultaneous outgoing connections
    int in_degree_limit = 1;   // max simultaneous incoming connections

    double admission_cap = 0;     // R_max, packets per slot per (node, commodity)
    double power_cap = 0;         // P_max, per link per slot
    double avg_power_budget = 0;  // P_tot, per node, time average

    std::vector<int> commodities;  // destination node ids; commodity k terminates at commodities[k]
    // (node, commodity node id) pairs allowed to admit traffic;
    // empty means every (n, c) with n != c.
    std::vector<std::pair<int, int>> admitting_pairs;

    UtilityKind utility = UtilityKind::Log;
    RateKind rate = RateKind::LogLinear;

    // Each directed link samples its state independently from this table
    // every slot.
    std::vector<ChannelStateDef> channel_states;

    double control_V = 1;  // backlog/utility tradeoff knob, must be >= 1
    int64_t horizon = 0;   // slots
    uint64_t seed = 0;

    int commodity_count() const { return static_cast<int>(commodities.size()); }
    double max_alpha() const;
    /// Index of a commodity by its destination node id, -1 if absent.
    int commodity_index(int node_id) const;
    /// True if (node, commodity node id) may admit traffic under this config.
    bool admits(int node, int commodity_node) const;
};

/// Returns an empty list iff the config is usable. Each entry is
/// "<field>: <rule>" and is data, not a failure.
std::vector<std::string> validate_config(const NetworkConfig& cfg);

/// Fixed-order, fixed-format serialization; equal configs produce
/// byte-identical text.
std::string canonical_text(const NetworkConfig& cfg);

/// FNV-1a over the canonical text with control_V / horizon / seed omitted.
/// Keys result rows: runs of the same scenario share a hash across the
/// (V, seed, horizon) sweep axes.
std::string structural_hash(const NetworkConfig& cfg);

double utility_value(UtilityKind kind, double r);

const char* to_string(UtilityKind kind);
const char* to_string(RateKind kind);
bool utility_from_string(std::string_view s, UtilityKind& out);
bool rate_from_string(std::string_view s, RateKind& out);

}  // namespace dlsa

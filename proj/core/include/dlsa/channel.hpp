#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "dlsa/config.hpp"
#include "dlsa/graph.hpp"
#include "dlsa/matrix.hpp"

namespace dlsa {

/// Per-slot link states: alpha(i,j) is the sampled link-state factor,
/// label(i,j) the index into NetworkConfig::channel_states. Non-links carry
/// alpha 0 and label -1.
struct ChannelState {
    Mat<double> alpha;
    Mat<int> label;
};

/// Draw one slot's channel states. Pure in (cfg, graph, seed, slot): the
/// same arguments always produce the same matrices, so slots can be sampled
/// in any order or in parallel.
ChannelState sample_state(const NetworkConfig& cfg, const Graph& g, uint64_t seed, int64_t slot);

/// The per-link rate-power function and its global bound.
class RateFunction {
public:
    RateFunction(RateKind kind, double power_cap, double max_alpha);
    static RateFunction from_config(const NetworkConfig& cfg);

    /// Rate for one link. Throws std::domain_error when p is outside
    /// [0, power_cap].
    double value(double alpha, double p, int gamma) const;

    double mu_max() const { return mu_max_; }
    double power_cap() const { return power_cap_; }
    RateKind kind() const { return kind_; }

private:
    RateKind kind_;
    double power_cap_;
    double mu_max_;
};

/// Rate of link (i, j) as a function of the whole allocation. The bundled
/// rate is separable and ignores every other entry; tests inject coupled
/// variants to exercise the property checks.
using MatrixRate = std::function<double(
    const Mat<double>& alpha, const Mat<double>& power,
    const Mat<uint8_t>& gamma, int i, int j)>;

MatrixRate separable_matrix_rate(const RateFunction& rate);

struct RatePropertyReport {
    // mu(p) <= mu(0) + delta * p on the grid, with delta witnessed at the
    // smallest positive power (a superlinear rate outgrows that slope).
    bool linear_bound_ok = false;
    // zeroing some other link's power never lowers this link's rate
    bool cross_link_monotone_ok = false;
    // power on a disconnected link changes no rate at all
    bool idle_power_inert_ok = false;
    // smallest slope bound valid on the whole grid
    double delta_witness = 0;

    bool all_ok() const {
        return linear_bound_ok && cross_link_monotone_ok && idle_power_inert_ok;
    }
};

/// Grid check of the three structural assumptions the scheduler relies on.
RatePropertyReport check_rate_properties(const MatrixRate& mu,
                                         std::span<const double> alpha_grid,
                                         std::span<const double> power_grid);

}  // namespace dlsa

#pragma once

#include <random>

#include "dlsa/config.hpp"

namespace dlsa::test {

/// Four-node full mesh with equiprobable G/B/C/U states, the bundled
/// reference scenario at a short horizon.
inline NetworkConfig mesh4_config() {
    NetworkConfig cfg;
    cfg.node_count = 4;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) cfg.links.emplace_back(i, j);
    cfg.out_degree_limit = 2;
    cfg.in_degree_limit = 2;
    cfg.admission_cap = 6;
    cfg.power_cap = 6;
    cfg.avg_power_budget = 4;
    cfg.commodities = {0, 1, 2, 3};
    cfg.utility = UtilityKind::Log;
    cfg.rate = RateKind::LogLinear;
    cfg.channel_states = {
        {"G", 3, 0.25}, {"B", 1, 0.25}, {"C", 2, 0.25}, {"U", 0, 0.25}};
    cfg.control_V = 100;
    cfg.horizon = 1000;
    cfg.seed = 1;
    return cfg;
}

/// Portable uniform draw (std::uniform_real_distribution is
/// implementation-defined; this is not).
inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

}  // namespace dlsa::test

#include "dlsa/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dlsa/optimize.hpp"

namespace dlsa {

WeightMatrix compute_weights(const Mat<double>& queues) {
    const int n = queues.rows();
    const int c = queues.cols();
    WeightMatrix w{Ten3<double>(n, n, c, 0.0), Mat<double>(n, n, 0.0),
                   Mat<int>(n, n, -1)};

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            double best = -1;
            int best_k = -1;
            for (int k = 0; k < c; ++k) {
                const double diff = queues(i, k) - queues(j, k);
                const double wk = diff > 0 ? diff : 0;
                w.per_commodity(i, j, k) = wk;
                if (wk > best) {  // strict: ties keep the smaller commodity
                    best = wk;
                    best_k = k;
                }
            }
            w.best(i, j) = best > 0 ? best : 0;
            w.best_commodity(i, j) = best_k;
        }
    }
    return w;
}

double solve_admission(double V, double Q, UtilityKind utility, double r_max) {
    if (r_max <= 0) return 0;
    if (utility == UtilityKind::Log) {
        if (Q <= 0) return r_max;  // objective strictly increasing
        return std::clamp(V / Q - 1.0, 0.0, r_max);
    }
    return solve_admission_generic(
        V, Q, [utility](double r) { return utility_value(utility, r); }, r_max);
}

double solve_admission_generic(double V, double Q,
                               const std::function<double(double)>& utility,
                               double r_max) {
    if (r_max <= 0) return 0;
    auto objective = [&](double r) { return V * utility(r) - Q * r; };
    return maximize_concave(objective, 0.0, r_max, 1e-9).x;
}

PowerChoice optimal_link_power(double W, double Z, double alpha, double cap) {
    if (W <= 0 || alpha <= 0 || cap <= 0) return {};

    double p;
    if (Z <= 0) {
        p = cap;  // objective strictly increasing in p
    } else {
        p = std::clamp(W / Z - 1.0 / alpha, 0.0, cap);
    }
    if (p <= 0) return {};

    const double gain = W * std::log1p(alpha * p) - Z * p;
    if (gain <= 0) return {};  // p = 0 achieves 0, prefer idle
    return {p, gain};
}

namespace {

struct EdgeGain {
    int id = 0;  // index into graph.undirected_edges()
    double weight = 0;
    PowerChoice uv, vu;
};

std::vector<EdgeGain> edge_gains(const Graph& g, const WeightMatrix& w,
                                 const std::vector<double>& Z,
                                 const ChannelState& state,
                                 const RateFunction& rate) {
    std::vector<EdgeGain> gains;
    gains.reserve(g.undirected_edges().size());
    for (size_t id = 0; id < g.undirected_edges().size(); ++id) {
        const auto& e = g.undirected_edges()[id];
        EdgeGain eg;
        eg.id = static_cast<int>(id);
        eg.uv = optimal_link_power(w.best(e.u, e.v), Z[e.u], state.alpha(e.u, e.v),
                                   rate.power_cap());
        eg.vu = optimal_link_power(w.best(e.v, e.u), Z[e.v], state.alpha(e.v, e.u),
                                   rate.power_cap());
        eg.weight = eg.uv.gain + eg.vu.gain;
        gains.push_back(eg);
    }
    return gains;
}

LinkSelection assemble(const Graph& g, const std::vector<EdgeGain>& gains,
                       const std::vector<int>& chosen, bool exact) {
    const int n = g.node_count();
    LinkSelection sel{Mat<uint8_t>(n, n, 0), Mat<double>(n, n, 0.0), 0.0, exact};

    // Sum in edge-id order so the objective is reproducible bit-for-bit.
    std::vector<int> ordered = chosen;
    std::sort(ordered.begin(), ordered.end());
    for (int id : ordered) {
        const auto& e = g.undirected_edges()[id];
        const auto& eg = gains[id];
        sel.gamma(e.u, e.v) = 1;
        sel.gamma(e.v, e.u) = 1;
        sel.power(e.u, e.v) = eg.uv.p;
        sel.power(e.v, e.u) = eg.vu.p;
        sel.objective += eg.weight;
    }
    return sel;
}

}  // namespace

LinkSelection select_links_exact(const Graph& g, const WeightMatrix& w,
                                 const std::vector<double>& Z,
                                 const ChannelState& state,
                                 const RateFunction& rate,
                                 const DegreeLimits& limits) {
    const auto& edges = g.undirected_edges();
    const int guard = std::min(limits.exact_edge_limit, 30);  // 2^30 subsets is already absurd
    if (static_cast<int>(edges.size()) > guard)
        throw std::invalid_argument(
            "select_links_exact: " + std::to_string(edges.size()) +
            " undirected edges exceed the enumeration guard of " +
            std::to_string(guard) + "; use select_links_greedy");

    const auto gains = edge_gains(g, w, Z, state, rate);

    // Only positive-weight edges matter: anything else burns degree budget
    // for nothing.
    std::vector<int> cand;
    for (const auto& eg : gains)
        if (eg.weight > 0) cand.push_back(eg.id);

    // Compact the touched endpoints so per-subset degree counting stays small.
    std::vector<int> node_slot(g.node_count(), -1);
    int slots = 0;
    std::vector<std::pair<int, int>> ends(cand.size());
    for (size_t c = 0; c < cand.size(); ++c) {
        const auto& e = edges[cand[c]];
        for (int v : {e.u, e.v})
            if (node_slot[v] < 0) node_slot[v] = slots++;
        ends[c] = {node_slot[e.u], node_slot[e.v]};
    }

    const int budget = std::min(limits.out_limit, limits.in_limit);
    const int m = static_cast<int>(cand.size());
    uint64_t best_mask = 0;
    double best_obj = 0;
    std::vector<int> deg(slots);

    for (uint64_t mask = 1; mask < (uint64_t{1} << m); ++mask) {
        std::fill(deg.begin(), deg.end(), 0);
        double obj = 0;
        bool feasible = true;
        for (int c = 0; c < m && feasible; ++c) {
            if (!(mask & (uint64_t{1} << c))) continue;
            if (++deg[ends[c].first] > budget || ++deg[ends[c].second] > budget)
                feasible = false;
            else
                obj += gains[cand[c]].weight;
        }
        if (feasible && obj > best_obj) {
            best_obj = obj;
            best_mask = mask;
        }
    }

    std::vector<int> chosen;
    for (int c = 0; c < m; ++c)
        if (best_mask & (uint64_t{1} << c)) chosen.push_back(cand[c]);
    return assemble(g, gains, chosen, /*exact=*/true);
}

LinkSelection select_links_greedy(const Graph& g, const WeightMatrix& w,
                                  const std::vector<double>& Z,
                                  const ChannelState& state,
                                  const RateFunction& rate,
                                  const DegreeLimits& limits) {
    const auto gains = edge_gains(g, w, Z, state, rate);

    std::vector<int> order;
    for (const auto& eg : gains)
        if (eg.weight > 0) order.push_back(eg.id);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (gains[a].weight != gains[b].weight)
            return gains[a].weight > gains[b].weight;
        return a < b;
    });

    const int budget = std::min(limits.out_limit, limits.in_limit);
    std::vector<int> residual(g.node_count(), budget);
    std::vector<int> chosen;
    for (int id : order) {
        const auto& e = g.undirected_edges()[id];
        if (residual[e.u] > 0 && residual[e.v] > 0) {
            --residual[e.u];
            --residual[e.v];
            chosen.push_back(id);
        }
    }
    return assemble(g, gains, chosen, /*exact=*/false);
}

Ten3<double> route_commodities(const LinkSelection& sel, const WeightMatrix& w,
                               const ChannelState& state,
                               const RateFunction& rate) {
    const int n = sel.gamma.rows();
    const int c = w.per_commodity.dim2();
    Ten3<double> rates(n, n, c, 0.0);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!sel.gamma(i, j)) continue;
            if (!(w.best(i, j) > 0)) continue;  // zero weight carries nothing
            const int k = w.best_commodity(i, j);
            rates(i, j, k) = rate.value(state.alpha(i, j), sel.power(i, j), 1);
        }
    }
    return rates;
}

}  // namespace dlsa

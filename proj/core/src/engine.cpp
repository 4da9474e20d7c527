#include "dlsa/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dlsa/optimize.hpp"

namespace dlsa {

QueueState QueueState::zeros(int nodes, int commodities) {
    return {Mat<double>(nodes, commodities, 0.0), std::vector<double>(nodes, 0.0)};
}

double RunMetrics::max_avg_power() const {
    double m = 0;
    for (double p : avg_power) m = std::max(m, p);
    return m;
}

namespace {

constexpr double kNegativeQueueTol = 1e-9;

std::string queue_dump(const QueueState& q, const SlotDecision& d, int n, int k) {
    std::ostringstream out;
    out << "fault at node " << n << " commodity index " << k << "\n";
    out << "Q row:";
    for (int kk = 0; kk < q.Q.cols(); ++kk) out << " " << q.Q(n, kk);
    out << "\nadmissions row:";
    for (int kk = 0; kk < d.admissions.cols(); ++kk) out << " " << d.admissions(n, kk);
    out << "\nallocated out rates (commodity " << k << "):";
    for (int b = 0; b < d.commodity_rates.dim1(); ++b)
        out << " " << d.commodity_rates(n, b, k);
    out << "\n";
    return out.str();
}

}  // namespace

QueueUpdate update_queues(const QueueState& state, const SlotDecision& d,
                          const NetworkConfig& cfg, const Graph& g) {
    const int n = cfg.node_count;
    const int c = cfg.commodity_count();

    // Realized transfers: allocations are honored up to the sender's
    // backlog, split proportionally when oversubscribed.
    Mat<double> out_x(n, c, 0.0);
    Mat<double> in_x(n, c, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < c; ++k) {
            double alloc = 0;
            for (int b : g.out_neighbors(i)) alloc += d.commodity_rates(i, b, k);
            if (alloc <= 0) continue;
            const double q = state.Q(i, k);
            const double scale = alloc <= q ? 1.0 : q / alloc;
            if (scale <= 0) continue;
            for (int b : g.out_neighbors(i)) {
                const double x = d.commodity_rates(i, b, k) * scale;
                if (x <= 0) continue;
                out_x(i, k) += x;
                in_x(b, k) += x;
            }
        }
    }

    QueueUpdate result{QueueState::zeros(n, c), Mat<double>(n, c, 0.0)};
    result.next.Z = state.Z;  // caller advances Z separately
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < c; ++k) {
            if (cfg.commodities[k] == i) {
                // Destination: arrivals are absorbed, the queue stays empty.
                result.delivered(i, k) = in_x(i, k);
                result.next.Q(i, k) = 0;
                continue;
            }
            double remain = state.Q(i, k) - out_x(i, k);
            if (remain < -kNegativeQueueTol)
                throw EngineFault(
                    "update_queues: negative backlog at node " + std::to_string(i) +
                        " commodity index " + std::to_string(k) + " (" +
                        std::to_string(remain) + ")",
                    queue_dump(state, d, i, k));
            remain = std::max(remain, 0.0);
            result.next.Q(i, k) = remain + in_x(i, k) + d.admissions(i, k);
        }
    }
    return result;
}

std::vector<double> update_virtual(const std::vector<double>& Z,
                                   const SlotDecision& d,
                                   double avg_power_budget) {
    std::vector<double> out(Z.size(), 0.0);
    for (size_t i = 0; i < Z.size(); ++i) {
        double power = 0;
        for (int j = 0; j < d.power.cols(); ++j)
            if (d.gamma(static_cast<int>(i), j)) power += d.power(static_cast<int>(i), j);
        out[i] = std::max(Z[i] - avg_power_budget, 0.0) + power;
    }
    return out;
}

StepResult step(const QueueState& state, const NetworkConfig& cfg,
                const Graph& g, const RateFunction& rate, int64_t slot,
                uint64_t seed, const DegreeLimits& limits) {
    const int n = cfg.node_count;
    const int c = cfg.commodity_count();
    const ChannelState s = sample_state(cfg, g, seed, slot);

    // Data admission, one scalar problem per admitting pair.
    Mat<double> admissions(n, c, 0.0);
    double admission_objective = 0;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < c; ++k) {
            const int dest = cfg.commodities[k];
            if (!cfg.admits(i, dest)) continue;
            const double q = state.Q(i, k);
            double r;
            try {
                r = solve_admission(cfg.control_V, q, cfg.utility, cfg.admission_cap);
            } catch (const NonConcaveError& e) {
                throw EngineFault("admission: non-concave utility at pair (n=" +
                                  std::to_string(i) + ", c=" + std::to_string(dest) +
                                  "): " + e.what());
            }
            admissions(i, k) = r;
            admission_objective += cfg.control_V * utility_value(cfg.utility, r) - q * r;
        }
    }

    const WeightMatrix w = compute_weights(state.Q);
    const bool exact =
        static_cast<int>(g.undirected_edges().size()) <= limits.exact_edge_limit;
    const LinkSelection sel =
        exact ? select_links_exact(g, w, state.Z, s, rate, limits)
              : select_links_greedy(g, w, state.Z, s, rate, limits);

    StepResult res;
    res.decision = SlotDecision{admissions, sel.gamma, sel.power,
                                route_commodities(sel, w, s, rate),
                                admission_objective + sel.objective};

    QueueUpdate qu;
    try {
        qu = update_queues(state, res.decision, cfg, g);
    } catch (const EngineFault& f) {
        throw EngineFault("slot " + std::to_string(slot) + ": " + f.what(),
                          f.diagnostic);
    }
    res.state = std::move(qu.next);
    res.state.Z = update_virtual(state.Z, res.decision, cfg.avg_power_budget);
    res.delivered = std::move(qu.delivered);

    res.record.slot = slot;
    res.record.Z = state.Z;
    res.record.objective = res.decision.objective_value;
    double backlog = 0;
    for (double q : state.Q.data()) backlog += q;
    res.record.total_backlog = backlog;
    double admitted = 0;
    for (double r : admissions.data()) admitted += r;
    res.record.admitted_sum = admitted;
    return res;
}

void check_slot_invariants(const QueueState& before, const SlotDecision& d,
                           const QueueState& after, const ChannelState& s,
                           const NetworkConfig& cfg, const Graph& g,
                           const RateFunction& rate, int64_t slot) {
    const int n = cfg.node_count;
    const int c = cfg.commodity_count();
    const double tol = 1e-9;
    auto fail = [&](const std::string& what) {
        throw EngineFault("invariant breach at slot " + std::to_string(slot) +
                          ": " + what);
    };

    for (int i = 0; i < n; ++i) {
        int row = 0, col = 0;
        for (int j = 0; j < n; ++j) {
            if (d.gamma(i, j) != d.gamma(j, i)) fail("connection matrix not symmetric");
            if (i == j && d.gamma(i, j)) fail("self-connection");
            if (d.gamma(i, j) && !g.has_link(i, j)) fail("connection without a link");
            row += d.gamma(i, j);
            col += d.gamma(j, i);

            const double p = d.power(i, j);
            if (p < 0 || p > cfg.power_cap + tol) fail("power outside [0, P_max]");
            if (!d.gamma(i, j) && p != 0) fail("power on a disconnected link");

            double rate_sum = 0;
            for (int k = 0; k < c; ++k) {
                const double r = d.commodity_rates(i, j, k);
                if (r < 0) fail("negative commodity rate");
                rate_sum += r;
            }
            if (rate_sum > rate.value(s.alpha(i, j), p, d.gamma(i, j)) + tol)
                fail("commodity rates exceed the link rate");
        }
        if (row > cfg.out_degree_limit) fail("out-degree limit exceeded");
        if (col > cfg.in_degree_limit) fail("in-degree limit exceeded");
    }

    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < c; ++k) {
            const double r = d.admissions(i, k);
            if (r < 0 || r > cfg.admission_cap + tol) fail("admission outside [0, R_max]");
            if (!cfg.admits(i, cfg.commodities[k]) && r != 0)
                fail("admission at a non-admitting pair");

            if (after.Q(i, k) < 0) fail("negative backlog");
            if (cfg.commodities[k] == i) {
                if (after.Q(i, k) != 0) fail("destination backlog not pinned to zero");
                continue;
            }
            // Queueing inequality: realized service can only undershoot the
            // allocation, arrivals can only undershoot too.
            double out_alloc = 0, in_alloc = 0;
            for (int b : g.out_neighbors(i)) out_alloc += d.commodity_rates(i, b, k);
            for (int a : g.in_neighbors(i)) in_alloc += d.commodity_rates(a, i, k);
            const double bound =
                std::max(before.Q(i, k) - out_alloc, 0.0) + in_alloc + r;
            if (after.Q(i, k) > bound + tol) fail("queueing inequality violated");
        }
    }

    const auto z_expected = update_virtual(before.Z, d, cfg.avg_power_budget);
    for (int i = 0; i < n; ++i) {
        if (after.Z[i] < 0) fail("negative virtual queue");
        if (std::abs(after.Z[i] - z_expected[i]) > tol)
            fail("virtual queue update mismatch");
    }
}

RunMetrics run(const NetworkConfig& cfg, const RunOptions& opts) {
    const Graph g = Graph::build(cfg);
    const RateFunction rate = RateFunction::from_config(cfg);
    const DegreeLimits limits{cfg.out_degree_limit, cfg.in_degree_limit,
                              opts.exact_edge_limit.value_or(20)};

    const int n = cfg.node_count;
    const int c = cfg.commodity_count();
    const int64_t T = cfg.horizon;

    QueueState state = QueueState::zeros(n, c);
    RunMetrics m;
    m.avg_admitted = Mat<double>(n, c, 0.0);
    m.delivered = Mat<double>(n, c, 0.0);
    m.admitted_total = Mat<double>(n, c, 0.0);
    m.avg_power.assign(n, 0.0);
    m.horizon = T;
    m.exact_selection =
        static_cast<int>(g.undirected_edges().size()) <= limits.exact_edge_limit;

    double backlog_sum = 0;
    double slot_utility_sum = 0;

    for (int64_t t = 0; t < T; ++t) {
        StepResult res = step(state, cfg, g, rate, t, cfg.seed, limits);
        if (opts.validate) {
            const ChannelState s = sample_state(cfg, g, cfg.seed, t);
            check_slot_invariants(state, res.decision, res.state, s, cfg, g, rate, t);
        }

        backlog_sum += res.record.total_backlog;
        for (int i = 0; i < n; ++i) {
            double p = 0;
            for (int j = 0; j < n; ++j)
                if (res.decision.gamma(i, j)) p += res.decision.power(i, j);
            m.avg_power[i] += p;
        }
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < c; ++k) {
                const double r = res.decision.admissions(i, k);
                m.admitted_total(i, k) += r;
                m.delivered(i, k) += res.delivered(i, k);
                if (cfg.admits(i, cfg.commodities[k]))
                    slot_utility_sum += utility_value(cfg.utility, r);
            }
        }

        if (opts.observer) opts.observer(res.record, state, res.decision);
        state = std::move(res.state);
    }

    if (T > 0) {
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < c; ++k) {
                m.avg_admitted(i, k) = m.admitted_total(i, k) / static_cast<double>(T);
                if (cfg.admits(i, cfg.commodities[k]))
                    m.avg_utility += utility_value(cfg.utility, m.avg_admitted(i, k));
                m.stability_stat = std::max(
                    m.stability_stat, state.Q(i, k) / static_cast<double>(T));
            }
            m.avg_power[i] /= static_cast<double>(T);
        }
        m.avg_backlog = backlog_sum / static_cast<double>(T);
        m.avg_slot_utility = slot_utility_sum / static_cast<double>(T);
    }
    m.final_Q = state.Q;
    m.final_Z = state.Z;

    if (opts.validate) {
        // Whatever was admitted is either still queued or was absorbed at
        // its destination.
        for (int k = 0; k < c; ++k) {
            double admitted = 0, delivered = 0, queued = 0;
            for (int i = 0; i < n; ++i) {
                admitted += m.admitted_total(i, k);
                delivered += m.delivered(i, k);
                queued += state.Q(i, k);
            }
            if (std::abs(admitted - delivered - queued) > 1e-6)
                throw EngineFault("conservation breach for commodity index " +
                                  std::to_string(k) + ": admitted " +
                                  std::to_string(admitted) + " != delivered " +
                                  std::to_string(delivered) + " + queued " +
                                  std::to_string(queued));
        }
    }
    return m;
}

}  // namespace dlsa

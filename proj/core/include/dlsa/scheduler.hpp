#pragma once

#include <functional>
#include <vector>

#include "dlsa/channel.hpp"
#include "dlsa/config.hpp"
#include "dlsa/graph.hpp"
#include "dlsa/matrix.hpp"

namespace dlsa {

/// Backpressure weights: per_commodity(i,j,k) = [Q_i^k - Q_j^k]^+,
/// best(i,j) = max over k, best_commodity(i,j) the argmax (ties broken by
/// smallest commodity index, -1 when there are no commodities).
struct WeightMatrix {
    Ten3<double> per_commodity;
    Mat<double> best;
    Mat<int> best_commodity;
};

WeightMatrix compute_weights(const Mat<double>& queues /* N x C */);

/// One slot's control output.
struct SlotDecision {
    Mat<double> admissions;        // N x C
    Mat<uint8_t> gamma;            // N x N, symmetric, zero diagonal
    Mat<double> power;             // N x N, zero wherever gamma is zero
    Ten3<double> commodity_rates;  // N x N x C offered rates
    double objective_value = 0;    // admission objective + link objective G
};

/// argmax over r in [0, r_max] of V * U(r) - Q * r. Log utility uses the
/// closed form clamp(V/Q - 1, 0, r_max) (r_max when Q == 0); other kinds go
/// through the generic search.
double solve_admission(double V, double Q, UtilityKind utility, double r_max);

/// Same objective with an arbitrary concave increasing utility, solved by
/// golden-section to 1e-9 in r. Throws NonConcaveError when the midpoint
/// test fails.
double solve_admission_generic(double V, double Q,
                               const std::function<double(double)>& utility,
                               double r_max);

struct PowerChoice {
    double p = 0;
    double gain = 0;  // maximized W*ln(1+alpha*p) - Z*p, never negative
};

/// Best power for one directed link under the log-linear rate:
/// stationary point W/Z - 1/alpha clamped to [0, cap]; Z == 0 sends full
/// power whenever W*alpha > 0. p is zeroed when the gain is zero.
PowerChoice optimal_link_power(double W, double Z, double alpha, double cap);

struct DegreeLimits {
    int out_limit = 1;          // d^o
    int in_limit = 1;           // d^i
    int exact_edge_limit = 20;  // enumeration guard, ~10^6 subsets
};

struct LinkSelection {
    Mat<uint8_t> gamma;
    Mat<double> power;
    double objective = 0;  // achieved G
    bool exact = true;
};

/// Exact maximizer of G over symmetric connection matrices. Separable rates
/// turn the problem into degree-bounded edge selection: an edge {i,j}
/// contributes gain(i->j) + gain(j->i) and consumes one unit of the per-node
/// budget min(d^o, d^i) at both endpoints. Enumerates edge subsets; refuses
/// graphs with more undirected edges than exact_edge_limit.
LinkSelection select_links_exact(const Graph& g, const WeightMatrix& w,
                                 const std::vector<double>& Z,
                                 const ChannelState& state,
                                 const RateFunction& rate,
                                 const DegreeLimits& limits);

/// Greedy 1/2-style approximation: positive-weight edges in descending
/// weight order (ties by edge id), added while both endpoints have budget.
LinkSelection select_links_greedy(const Graph& g, const WeightMatrix& w,
                                  const std::vector<double>& Z,
                                  const ChannelState& state,
                                  const RateFunction& rate,
                                  const DegreeLimits& limits);

/// Give each connected link's full rate to its best-weight commodity;
/// links whose best weight is zero carry nothing.
Ten3<double> route_commodities(const LinkSelection& sel, const WeightMatrix& w,
                               const ChannelState& state,
                               const RateFunction& rate);

}  // namespace dlsa

#include "dlsa/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dlsa/rng.hpp"

namespace dlsa {

ChannelState sample_state(const NetworkConfig& cfg, const Graph& g,
                          uint64_t seed, int64_t slot) {
    const int n = cfg.node_count;
    ChannelState s{Mat<double>(n, n, 0.0), Mat<int>(n, n, -1)};

    // CDF over the configured states; the tail bucket absorbs rounding.
    std::vector<double> cdf(cfg.channel_states.size());
    double acc = 0;
    for (size_t k = 0; k < cfg.channel_states.size(); ++k) {
        acc += cfg.channel_states[k].prob;
        cdf[k] = acc;
    }

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!g.has_link(i, j)) continue;
            const uint64_t stream = static_cast<uint64_t>(i) * n + j;
            const double u = stateless_uniform(seed, static_cast<uint64_t>(slot), stream);
            size_t k = 0;
            while (k + 1 < cdf.size() && u >= cdf[k]) ++k;
            s.label(i, j) = static_cast<int>(k);
            s.alpha(i, j) = cfg.channel_states[k].alpha;
        }
    }
    return s;
}

RateFunction::RateFunction(RateKind kind, double power_cap, double max_alpha)
    : kind_(kind), power_cap_(power_cap) {
    mu_max_ = std::log1p(max_alpha * power_cap);
}

RateFunction RateFunction::from_config(const NetworkConfig& cfg) {
    return RateFunction(cfg.rate, cfg.power_cap, cfg.max_alpha());
}

double RateFunction::value(double alpha, double p, int gamma) const {
    if (p < 0 || p > power_cap_)
        throw std::domain_error("rate: power " + std::to_string(p) +
                                " outside [0, " + std::to_string(power_cap_) + "]");
    if (gamma == 0) return 0;
    return std::log1p(alpha * p);
}

MatrixRate separable_matrix_rate(const RateFunction& rate) {
    return [rate](const Mat<double>& alpha, const Mat<double>& power,
                  const Mat<uint8_t>& gamma, int i, int j) {
        return rate.value(alpha(i, j), power(i, j), gamma(i, j));
    };
}

namespace {

// Small fixed topologies used to probe the rate function. Link (0,1) is the
// observed link; (1,2) is the "other" link whose power gets perturbed.
struct Probe {
    Mat<double> alpha{3, 3, 0.0};
    Mat<double> power{3, 3, 0.0};
    Mat<uint8_t> gamma{3, 3, 0};
};

}  // namespace

RatePropertyReport check_rate_properties(const MatrixRate& mu,
                                         std::span<const double> alpha_grid,
                                         std::span<const double> power_grid) {
    RatePropertyReport rep;
    const double tol = 1e-9;

    // Linear power bound: the slope witnessed at the smallest positive power
    // must cover the whole grid. Concave-style rates satisfy this (secant
    // slopes shrink with p); superlinear ones outgrow it.
    double delta_ref = 0;
    double delta_witness = 0;
    bool linear_ok = true;
    {
        Probe pr;
        pr.gamma(0, 1) = 1;
        double p_min = std::numeric_limits<double>::infinity();
        for (double p : power_grid)
            if (p > 0) p_min = std::min(p_min, p);

        for (double a : alpha_grid) {
            pr.alpha(0, 1) = a;
            pr.power(0, 1) = 0;
            const double mu0 = mu(pr.alpha, pr.power, pr.gamma, 0, 1);
            for (double p : power_grid) {
                if (p <= 0) continue;
                pr.power(0, 1) = p;
                const double slope = (mu(pr.alpha, pr.power, pr.gamma, 0, 1) - mu0) / p;
                delta_witness = std::max(delta_witness, slope);
                if (p == p_min) delta_ref = std::max(delta_ref, slope);
            }
        }
        for (double a : alpha_grid) {
            pr.alpha(0, 1) = a;
            pr.power(0, 1) = 0;
            const double mu0 = mu(pr.alpha, pr.power, pr.gamma, 0, 1);
            for (double p : power_grid) {
                if (p <= 0) continue;
                pr.power(0, 1) = p;
                const double val = mu(pr.alpha, pr.power, pr.gamma, 0, 1);
                if (val > mu0 + delta_ref * p + tol) {
                    linear_ok = false;
                    break;
                }
            }
            if (!linear_ok) break;
        }
    }
    rep.delta_witness = delta_witness;
    rep.linear_bound_ok = linear_ok;

    // Cross-link monotonicity: zeroing power on (1,2) must not lower the
    // rate of (0,1), for any power it previously carried.
    {
        Probe pr;
        pr.gamma(0, 1) = 1;
        pr.gamma(1, 2) = 1;
        bool ok = true;
        for (double a : alpha_grid) {
            for (double a2 : alpha_grid) {
                pr.alpha(0, 1) = a;
                pr.alpha(1, 2) = a2;
                for (double p : power_grid) {
                    pr.power(0, 1) = p;
                    for (double p2 : power_grid) {
                        pr.power(1, 2) = p2;
                        const double with_other = mu(pr.alpha, pr.power, pr.gamma, 0, 1);
                        pr.power(1, 2) = 0;
                        const double without = mu(pr.alpha, pr.power, pr.gamma, 0, 1);
                        if (with_other > without + tol) ok = false;
                    }
                }
            }
        }
        rep.cross_link_monotone_ok = ok;
    }

    // Idle-power inertness: with (1,2) disconnected, its power entry must
    // not move any rate, the disconnected link's own included.
    {
        Probe pr;
        pr.gamma(0, 1) = 1;
        pr.gamma(1, 2) = 0;
        bool ok = true;
        for (double a : alpha_grid) {
            pr.alpha(0, 1) = a;
            pr.alpha(1, 2) = a;
            for (double p : power_grid) {
                pr.power(0, 1) = p;
                pr.power(1, 2) = 0;
                const double base01 = mu(pr.alpha, pr.power, pr.gamma, 0, 1);
                const double base12 = mu(pr.alpha, pr.power, pr.gamma, 1, 2);
                for (double p2 : power_grid) {
                    pr.power(1, 2) = p2;
                    if (std::abs(mu(pr.alpha, pr.power, pr.gamma, 0, 1) - base01) > tol) ok = false;
                    if (std::abs(mu(pr.alpha, pr.power, pr.gamma, 1, 2) - base12) > tol) ok = false;
                }
            }
        }
        rep.idle_power_inert_ok = ok;
    }

    return rep;
}

}  // namespace dlsa

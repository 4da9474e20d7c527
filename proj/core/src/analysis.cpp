#include "dlsa/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dlsa/channel.hpp"
#include "dlsa/csv.hpp"

namespace dlsa {

double compute_B(const NetworkConfig& cfg) {
    const double mu_max = RateFunction::from_config(cfg).mu_max();
    const double n = cfg.node_count;
    const double di = cfg.in_degree_limit;
    const double service = 1.5 * di * di * mu_max * mu_max;
    const double arrivals = cfg.admission_cap * cfg.admission_cap;
    const double power = 0.5 * (cfg.power_cap + cfg.avg_power_budget) *
                         (cfg.power_cap + cfg.avg_power_budget);
    return n * n * (service + arrivals) + n * power;
}

TheoryReport diagnose_sweep(
    const std::vector<std::pair<double, RunMetrics>>& runs,
    const NetworkConfig& cfg) {
    std::map<double, std::vector<const RunMetrics*>> by_v;
    for (const auto& [v, m] : runs) by_v[v].push_back(&m);
    if (by_v.size() < 2)
        throw std::invalid_argument("diagnose_sweep: need >= 2 sweep points");

    TheoryReport rep;
    rep.B = compute_B(cfg);
    rep.mu_max = RateFunction::from_config(cfg).mu_max();

    {
        std::vector<double> alphas{0.0};
        for (const auto& s : cfg.channel_states) alphas.push_back(s.alpha);
        std::sort(alphas.begin(), alphas.end());
        alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
        std::vector<double> powers;
        for (int i = 0; i <= 12; ++i) powers.push_back(cfg.power_cap * i / 12.0);
        const RateFunction rate = RateFunction::from_config(cfg);
        rep.delta_witness =
            check_rate_properties(separable_matrix_rate(rate), alphas, powers)
                .delta_witness;
    }

    for (const auto& [v, group] : by_v) {
        VSummary s;
        s.V = v;
        for (const RunMetrics* m : group) {
            s.avg_utility += m->avg_utility;
            s.avg_backlog += m->avg_backlog;
            s.stability_stat += m->stability_stat;
            s.max_avg_power += m->max_avg_power();
        }
        const double k = static_cast<double>(group.size());
        s.avg_utility /= k;
        s.avg_backlog /= k;
        s.stability_stat /= k;
        s.max_avg_power /= k;
        s.gap_bound = rep.B / v;
        rep.per_V.push_back(s);
    }

    const double v_max = rep.per_V.back().V;
    const double proxy = rep.per_V.back().avg_utility;  // stand-in for the optimum
    rep.gap_bound = rep.B / v_max;
    for (auto& s : rep.per_V) s.gap_ok = s.avg_utility >= proxy - s.gap_bound;

    char buf[160];
    for (size_t i = 1; i < rep.per_V.size(); ++i) {
        const auto& lo = rep.per_V[i - 1];
        const auto& hi = rep.per_V[i];
        if (hi.avg_utility < lo.avg_utility - 0.02 * std::abs(lo.avg_utility)) {
            std::snprintf(buf, sizeof(buf),
                          "utility: mean at V=%g (%.6g) drops more than 2%% below V=%g (%.6g)",
                          hi.V, hi.avg_utility, lo.V, lo.avg_utility);
            rep.flags.push_back(buf);
        }
        if (hi.avg_backlog <= lo.avg_backlog) {
            std::snprintf(buf, sizeof(buf),
                          "backlog: no growth from V=%g (%.6g) to V=%g (%.6g)",
                          lo.V, lo.avg_backlog, hi.V, hi.avg_backlog);
            rep.flags.push_back(buf);
        }
    }
    return rep;
}

std::string report_to_text(const TheoryReport& r) {
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "drift bound B = %.6g   mu_max = %.6g   delta witness = %.6g\n"
                  "utility gap bound at largest V: B/V = %.6g\n",
                  r.B, r.mu_max, r.delta_witness, r.gap_bound);
    out << buf;
    std::snprintf(buf, sizeof(buf), "%10s %14s %14s %14s %14s %12s %7s\n", "V",
                  "avg_utility", "avg_backlog", "stability", "max_avg_pwr",
                  "B/V", "gap_ok");
    out << buf;
    for (const auto& s : r.per_V) {
        std::snprintf(buf, sizeof(buf), "%10g %14.6g %14.6g %14.6g %14.6g %12.6g %7s\n",
                      s.V, s.avg_utility, s.avg_backlog, s.stability_stat,
                      s.max_avg_power, s.gap_bound, s.gap_ok ? "yes" : "NO");
        out << buf;
    }
    if (r.flags.empty()) {
        out << "flags: none\n";
    } else {
        out << "flags:\n";
        for (const auto& f : r.flags) out << "  - " << f << "\n";
    }
    return out.str();
}

std::string report_to_csv(const TheoryReport& r) {
    std::string out =
        "V,avg_utility,avg_backlog,stability_stat,max_avg_power,gap_bound,gap_ok,"
        "B,mu_max,delta_witness\n";
    for (const auto& s : r.per_V) {
        out += csv_join({csv_double(s.V), csv_double(s.avg_utility),
                         csv_double(s.avg_backlog), csv_double(s.stability_stat),
                         csv_double(s.max_avg_power), csv_double(s.gap_bound),
                         s.gap_ok ? "1" : "0", csv_double(r.B), csv_double(r.mu_max),
                         csv_double(r.delta_witness)});
        out += "\n";
    }
    return out;
}

}  // namespace dlsa

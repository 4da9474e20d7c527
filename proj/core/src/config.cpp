#include "dlsa/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dlsa {

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

double NetworkConfig::max_alpha() const {
    double m = 0;
    for (const auto& s : channel_states) m = std::max(m, s.alpha);
    return m;
}

int NetworkConfig::commodity_index(int node_id) const {
    for (size_t k = 0; k < commodities.size(); ++k)
        if (commodities[k] == node_id) return static_cast<int>(k);
    return -1;
}

bool NetworkConfig::admits(int node, int commodity_node) const {
    if (node == commodity_node) return false;
    if (commodity_index(commodity_node) < 0) return false;
    if (admitting_pairs.empty()) return true;
    return std::find(admitting_pairs.begin(), admitting_pairs.end(),
                     std::make_pair(node, commodity_node)) != admitting_pairs.end();
}

std::vector<std::string> validate_config(const NetworkConfig& cfg) {
    std::vector<std::string> v;
    auto bad = [&](const std::string& msg) { v.push_back(msg); };

    if (cfg.node_count < 1) bad("node_count: must be positive");

    for (const auto& [i, j] : cfg.links) {
        if (i == j) {
            bad("links: self-loop (" + std::to_string(i) + "," + std::to_string(j) + ")");
        } else if (i < 0 || i >= cfg.node_count || j < 0 || j >= cfg.node_count) {
            bad("links: node id out of range (" + std::to_string(i) + "," +
                std::to_string(j) + ")");
        }
    }
    {
        auto sorted = cfg.links;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            bad("links: duplicate entry");
    }

    if (cfg.out_degree_limit < 1) bad("out_degree_limit: must be positive");
    if (cfg.in_degree_limit < 1) bad("in_degree_limit: must be positive");
    if (cfg.admission_cap < 0) bad("admission_cap: must be nonnegative");
    if (cfg.power_cap < 0) bad("power_cap: must be nonnegative");
    if (cfg.avg_power_budget < 0) bad("avg_power_budget: must be nonnegative");
    if (!(cfg.control_V >= 1)) bad("control_V: must be >= 1");
    if (cfg.horizon < 0) bad("horizon: must be nonnegative");

    if (cfg.commodities.empty()) bad("commodities: empty");
    for (int c : cfg.commodities)
        if (c < 0 || c >= cfg.node_count)
            bad("commodities: node id out of range (" + std::to_string(c) + ")");
    {
        auto sorted = cfg.commodities;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            bad("commodities: duplicate entry");
    }

    for (const auto& [n, c] : cfg.admitting_pairs) {
        if (n < 0 || n >= cfg.node_count)
            bad("admitting_pairs: node out of range (" + std::to_string(n) + ")");
        else if (cfg.commodity_index(c) < 0)
            bad("admitting_pairs: unknown commodity (" + std::to_string(c) + ")");
        else if (n == c)
            bad("admitting_pairs: destination cannot admit its own commodity (" +
                std::to_string(n) + "," + std::to_string(c) + ")");
    }

    if (cfg.channel_states.empty()) {
        bad("channel_spec: no states");
    } else {
        double sum = 0;
        for (const auto& s : cfg.channel_states) {
            if (s.prob < 0) bad("channel_spec: negative probability for state " + s.label);
            if (s.alpha < 0) bad("channel_spec: negative factor for state " + s.label);
            sum += s.prob;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            bad("channel_spec: probabilities sum " + fmt_double(sum));
        std::vector<std::string> labels;
        for (const auto& s : cfg.channel_states) labels.push_back(s.label);
        std::sort(labels.begin(), labels.end());
        if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
            bad("channel_spec: duplicate state label");
    }

    return v;
}

std::string canonical_text(const NetworkConfig& cfg) {
    std::ostringstream out;
    out << "nodes " << cfg.node_count << "\n";
    out << "out_degree_limit " << cfg.out_degree_limit << "\n";
    out << "in_degree_limit " << cfg.in_degree_limit << "\n";
    out << "admission_cap " << fmt_double(cfg.admission_cap) << "\n";
    out << "power_cap " << fmt_double(cfg.power_cap) << "\n";
    out << "avg_power_budget " << fmt_double(cfg.avg_power_budget) << "\n";
    out << "utility " << to_string(cfg.utility) << "\n";
    out << "rate " << to_string(cfg.rate) << "\n";

    auto links = cfg.links;
    std::sort(links.begin(), links.end());
    for (const auto& [i, j] : links) out << "link " << i << " " << j << "\n";

    auto commodities = cfg.commodities;
    std::sort(commodities.begin(), commodities.end());
    out << "commodities";
    for (int c : commodities) out << " " << c;
    out << "\n";

    auto pairs = cfg.admitting_pairs;
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [n, c] : pairs) out << "admit " << n << " " << c << "\n";

    for (const auto& s : cfg.channel_states)
        out << "state " << s.label << " " << fmt_double(s.alpha) << " "
            << fmt_double(s.prob) << "\n";

    out << "control_V " << fmt_double(cfg.control_V) << "\n";
    out << "horizon " << cfg.horizon << "\n";
    out << "seed " << cfg.seed << "\n";
    return out.str();
}

std::string structural_hash(const NetworkConfig& cfg) {
    NetworkConfig keyed = cfg;
    keyed.control_V = 1;
    keyed.horizon = 0;
    keyed.seed = 0;
    const std::string text = canonical_text(keyed);

    uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double utility_value(UtilityKind kind, double r) {
    switch (kind) {
        case UtilityKind::Log: return std::log1p(r);
        case UtilityKind::Sqrt: return std::sqrt(r);
    }
    return 0;
}

const char* to_string(UtilityKind kind) {
    switch (kind) {
        case UtilityKind::Log: return "log";
        case UtilityKind::Sqrt: return "sqrt";
    }
    return "?";
}

const char* to_string(RateKind kind) {
    switch (kind) {
        case RateKind::LogLinear: return "log-linear";
    }
    return "?";
}

bool utility_from_string(std::string_view s, UtilityKind& out) {
    if (s == "log") { out = UtilityKind::Log; return true; }
    if (s == "sqrt") { out = UtilityKind::Sqrt; return true; }
    return false;
}

bool rate_from_string(std::string_view s, RateKind& out) {
    if (s == "log-linear") { out = RateKind::LogLinear; return true; }
    return false;
}

}  // namespace dlsa

#include "dlsa/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dlsa {

Graph Graph::build(const NetworkConfig& cfg) {
    auto violations = validate_config(cfg);
    if (!violations.empty()) {
        std::string msg = "invalid config:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw std::invalid_argument(msg);
    }

    Graph g;
    g.node_count_ = cfg.node_count;
    g.out_.resize(cfg.node_count);
    g.in_.resize(cfg.node_count);
    g.present_ = Mat<uint8_t>(cfg.node_count, cfg.node_count, 0);

    for (const auto& [i, j] : cfg.links) {
        g.out_[i].push_back(j);
        g.in_[j].push_back(i);
        g.present_(i, j) = 1;
    }
    for (auto& v : g.out_) std::sort(v.begin(), v.end());
    for (auto& v : g.in_) std::sort(v.begin(), v.end());

    for (int i = 0; i < cfg.node_count; ++i)
        for (int j = i + 1; j < cfg.node_count; ++j)
            if (g.present_(i, j) && g.present_(j, i))
                g.undirected_.push_back({i, j});

    return g;
}

int Graph::max_out_degree() const {
    size_t m = 0;
    for (const auto& v : out_) m = std::max(m, v.size());
    return static_cast<int>(m);
}

int Graph::max_in_degree() const {
    size_t m = 0;
    for (const auto& v : in_) m = std::max(m, v.size());
    return static_cast<int>(m);
}

std::string to_text(const Graph& g) {
    std::ostringstream out;
    out << "nodes " << g.node_count() << "\n";
    for (int n = 0; n < g.node_count(); ++n) {
        out << "out " << n << ":";
        for (int b : g.out_neighbors(n)) out << " " << b;
        out << "\n";
        out << "in " << n << ":";
        for (int a : g.in_neighbors(n)) out << " " << a;
        out << "\n";
    }
    for (const auto& e : g.undirected_edges())
        out << "edge " << e.u << " " << e.v << "\n";
    return out.str();
}

}  // namespace dlsa

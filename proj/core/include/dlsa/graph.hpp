#pragma once

#include <string>
#include <vector>

#include "dlsa/config.hpp"
#include "dlsa/matrix.hpp"

namespace dlsa {

/// Undirected edge {u, v}, stored with u < v.
struct UndirectedEdge {
    int u = 0;
    int v = 0;
    bool operator==(const UndirectedEdge&) const = default;
};

/// Static topology derived from NetworkConfig::links. Neighbor lists are
/// sorted ascending so iteration order is canonical.
class Graph {
public:
    static Graph build(const NetworkConfig& cfg);  // throws std::invalid_argument listing violations

    int node_count() const { return node_count_; }
    const std::vector<int>& out_neighbors(int n) const { return out_[n]; }
    const std::vector<int>& in_neighbors(int n) const { return in_[n]; }
    /// Edges selectable for symmetric connection: both directions present.
    const std::vector<UndirectedEdge>& undirected_edges() const { return undirected_; }
    bool has_link(int i, int j) const { return present_(i, j) != 0; }

    /// Graph degree capacities. Independent of the configured limits: a node
    /// may have more neighbors than it can connect to in one slot.
    int max_out_degree() const;
    int max_in_degree() const;

private:
    int node_count_ = 0;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
    std::vector<UndirectedEdge> undirected_;
    Mat<uint8_t> present_;
};

inline Graph build_graph(const NetworkConfig& cfg) { return Graph::build(cfg); }

/// Deterministic text form, used for golden comparisons and debugging.
std::string to_text(const Graph& g);

}  // namespace dlsa

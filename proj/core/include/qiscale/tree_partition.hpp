#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qiscale/graph_window.hpp"

namespace qiscale {

// Plain adjacency-list tree on vertices 0..n-1 (used both standalone and as
// the live subtree during window partitioning).
struct SimpleTree {
    std::vector<std::vector<std::int32_t>> adj;
    std::size_t size() const { return adj.size(); }
};

// Validates acyclicity + connectivity.
void check_tree(const SimpleTree& t);

// Endpoints and vertex sequence of a diametral geodesic (double BFS; exact
// on trees). Returns the path u_0..u_d.
std::vector<std::int32_t> diametral_path(const SimpleTree& t);

// Cuts a set S of k vertices with diam_T(S) <= 2(k-1) whose removal leaves
// the tree connected. Requires diameter(T) > k.
std::vector<std::int32_t> tree_cut(const SimpleTree& t, int k);

struct Partition {
    int k = 0;
    std::vector<VertexSet> pieces;
    std::vector<int> diameters;  // in the window graph
    std::optional<std::size_t> remainder_index;
};

// Spanning-tree partition into exact size-k pieces of window diameter
// <= 2(k-1), plus at most one flagged remainder.
Partition partition_window(const WindowPtr& window, int k, std::uint64_t seed);

struct PartitionCheck {
    bool ok = true;
    std::string failure;
};

// Independent verifier; shares no code with the constructor.
PartitionCheck verify_partition(const WindowPtr& window, const Partition& p);

std::string partition_to_json(const Partition& p);

}  // namespace qiscale

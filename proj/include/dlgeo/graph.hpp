#pragma once

#include <string>
#include <vector>

#include "dlgeo/errors.hpp"

namespace dlgeo {

/// Undirected simple graph on vertices 0..n-1 with sorted adjacency lists
/// and optional text labels, in a fixed canonical order.
struct FiniteGraph {
    std::vector<std::vector<int>> adj;
    std::vector<std::string> labels; // empty or one per vertex

    int vertex_count() const { return static_cast<int>(adj.size()); }

    long long edge_count() const {
        long long twice = 0;
        for (const auto& a : adj) twice += static_cast<long long>(a.size());
        return twice / 2;
    }

    int degree(int v) const { return static_cast<int>(adj[v].size()); }

    bool adjacent(int u, int v) const;

    /// Inserts an undirected edge; rejects loops and duplicates.
    void add_edge(int u, int v);

    /// Sorts every adjacency list. Call once after bulk edge insertion.
    void sort_adjacency();
};

/// BFS distances from one source; unreachable = -1.
std::vector<int> bfs_distances(const FiniteGraph& g, int source);

/// BFS distances from a set of sources; unreachable = -1.
std::vector<int> bfs_distances(const FiniteGraph& g, const std::vector<int>& sources);

bool is_connected(const FiniteGraph& g);

/// Length of a shortest cycle, or -1 if the graph is a forest. O(V*E).
int girth(const FiniteGraph& g);

/// Extracts one shortest cycle as a vertex sequence (empty for forests).
std::vector<int> shortest_cycle(const FiniteGraph& g);

/// DOT text, one vertex per line, labels included when present.
std::string to_dot(const FiniteGraph& g, const std::string& name = "ball");

/// {"vertices": [...], "edges": [[u,v], ...]} with u < v, edges sorted.
std::string to_json(const FiniteGraph& g);

} // namespace dlgeo

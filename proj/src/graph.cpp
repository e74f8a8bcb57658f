#include "dlgeo/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include <json.hpp>

namespace dlgeo {

bool FiniteGraph::adjacent(int u, int v) const {
    const auto& a = adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

void FiniteGraph::add_edge(int u, int v) {
    if (u == v) throw InvalidInputError("self-loop rejected at vertex " + std::to_string(u));
    adj[u].push_back(v);
    adj[v].push_back(u);
}

void FiniteGraph::sort_adjacency() {
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            throw InvalidInputError("multi-edge detected during graph construction");
    }
}

std::vector<int> bfs_distances(const FiniteGraph& g, int source) {
    return bfs_distances(g, std::vector<int>{source});
}

std::vector<int> bfs_distances(const FiniteGraph& g, const std::vector<int>& sources) {
    std::vector<int> dist(g.adj.size(), -1);
    std::deque<int> queue;
    for (int s : sources) {
        if (dist[s] == -1) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : g.adj[u]) {
            if (dist[w] == -1) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

bool is_connected(const FiniteGraph& g) {
    if (g.vertex_count() == 0) return true;
    auto dist = bfs_distances(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

namespace {

// One BFS rooted at w. Every non-tree edge (u,x) seen from depth(u) closes a
// cycle through the BFS tree of length dist(u)+dist(x)+1; the minimum over
// all roots is the girth. Returns {length, u, x, parents, dist} for the best
// candidate at this root.
struct GirthProbe {
    int length = -1;
    int u = -1, x = -1;
    std::vector<int> parent, dist;
};

GirthProbe girth_from(const FiniteGraph& g, int root) {
    GirthProbe p;
    int n = g.vertex_count();
    p.parent.assign(n, -1);
    p.dist.assign(n, -1);
    std::deque<int> queue;
    p.dist[root] = 0;
    queue.push_back(root);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : g.adj[u]) {
            if (p.dist[w] == -1) {
                p.dist[w] = p.dist[u] + 1;
                p.parent[w] = u;
                queue.push_back(w);
            } else if (w != p.parent[u] && p.dist[w] >= p.dist[u]) {
                int len = p.dist[u] + p.dist[w] + 1;
                if (p.length == -1 || len < p.length) {
                    p.length = len;
                    p.u = u;
                    p.x = w;
                }
            }
        }
    }
    return p;
}

} // namespace

int girth(const FiniteGraph& g) {
    int best = -1;
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto p = girth_from(g, v);
        if (p.length != -1 && (best == -1 || p.length < best)) best = p.length;
    }
    return best;
}

std::vector<int> shortest_cycle(const FiniteGraph& g) {
    int best = -1;
    GirthProbe bestProbe;
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto p = girth_from(g, v);
        if (p.length != -1 && (best == -1 || p.length < best)) {
            best = p.length;
            bestProbe = std::move(p);
        }
    }
    if (best == -1) return {};
    // At a minimizing candidate the two tree paths meet only at the root,
    // otherwise a strictly shorter cycle would have been reported.
    std::vector<int> left, right;
    for (int v = bestProbe.u; v != -1; v = bestProbe.parent[v]) left.push_back(v);
    for (int v = bestProbe.x; v != -1; v = bestProbe.parent[v]) right.push_back(v);
    while (left.size() >= 2 && right.size() >= 2 &&
           left[left.size() - 2] == right[right.size() - 2]) {
        left.pop_back();
        right.pop_back();
    }
    std::vector<int> cycle(left.begin(), left.end());
    cycle.insert(cycle.end(), right.rbegin() + 1, right.rend());
    return cycle;
}

std::string to_dot(const FiniteGraph& g, const std::string& name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        os << "  " << v;
        if (!g.labels.empty()) os << " [label=\"" << g.labels[v] << "\"]";
        os << ";\n";
    }
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int w : g.adj[u])
            if (u < w) os << "  " << u << " -- " << w << ";\n";
    os << "}\n";
    return os.str();
}

std::string to_json(const FiniteGraph& g) {
    nlohmann::json j;
    if (g.labels.empty()) {
        std::vector<int> ids(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v) ids[v] = v;
        j["vertices"] = ids;
    } else {
        j["vertices"] = g.labels;
    }
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int w : g.adj[u])
            if (u < w) edges.emplace_back(u, w);
    j["edges"] = edges;
    return j.dump();
}

} // namespace dlgeo

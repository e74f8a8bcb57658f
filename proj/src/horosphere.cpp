#include "dlgeo/horosphere.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace dlgeo {

std::string HVertex::to_string() const {
    return "[" + x.to_string() + " , " + y.to_string() + "]";
}

DLGraph::DLGraph(GroupPtr left_group, GroupPtr right_group)
    : left_(std::move(left_group)), right_(std::move(right_group)) {}

void DLGraph::validate(const HVertex& v) const {
    if (v.x.height + v.y.height != 0)
        throw IncompatibleError("horosphere vertex heights sum to " +
                                std::to_string(v.x.height + v.y.height) + ", expected 0");
    left_.make_vertex(v.x.height, v.x.address);
    right_.make_vertex(v.y.height, v.y.address);
}

std::vector<HVertex> DLGraph::neighbors(const HVertex& v) const {
    std::vector<HVertex> out;
    out.reserve(degree());
    TreeVertex yUp = right_.parent(v.y);
    for (auto& c : left_.children(v.x)) out.push_back(HVertex{std::move(c), yUp});
    TreeVertex xUp = left_.parent(v.x);
    for (auto& c : right_.children(v.y)) out.push_back(HVertex{xUp, std::move(c)});
    return out;
}

Ball<HVertex> DLGraph::ball(const HVertex& center, int radius, std::size_t capacity) const {
    validate(center);
    return build_ball(center, radius, [this](const HVertex& v) { return neighbors(v); },
                      capacity);
}

long long DLGraph::distance(const HVertex& u, const HVertex& v, std::size_t capacity) const {
    validate(u);
    validate(v);
    if (u == v) return 0;
    std::unordered_map<HVertex, long long> dist;
    std::deque<HVertex> queue;
    dist.emplace(u, 0);
    queue.push_back(u);
    while (!queue.empty()) {
        HVertex cur = queue.front();
        queue.pop_front();
        long long d = dist.at(cur);
        for (auto& w : neighbors(cur)) {
            if (dist.contains(w)) continue;
            if (w == v) return d + 1;
            if (dist.size() >= capacity)
                throw CapacityError("distance search exceeded the capacity of " +
                                    std::to_string(capacity) + " vertices");
            dist.emplace(w, d + 1);
            queue.push_back(std::move(w));
        }
    }
    throw CapacityError("distance search exhausted without reaching the target");
}

long long DLGraph::distance_bidirectional(const HVertex& u, const HVertex& v,
                                          std::size_t capacity) const {
    validate(u);
    validate(v);
    if (u == v) return 0;
    std::unordered_map<HVertex, long long> du, dv;
    std::deque<HVertex> qu, qv;
    du.emplace(u, 0);
    dv.emplace(v, 0);
    qu.push_back(u);
    qv.push_back(v);
    long long best = -1;
    auto expand = [&](std::unordered_map<HVertex, long long>& mine, std::deque<HVertex>& queue,
                      const std::unordered_map<HVertex, long long>& other) {
        std::size_t count = queue.size();
        while (count-- > 0) {
            HVertex cur = queue.front();
            queue.pop_front();
            long long d = mine.at(cur);
            for (auto& w : neighbors(cur)) {
                if (mine.contains(w)) continue;
                if (mine.size() + other.size() >= capacity)
                    throw CapacityError("bidirectional search exceeded the capacity of " +
                                        std::to_string(capacity) + " vertices");
                mine.emplace(w, d + 1);
                auto hit = other.find(w);
                if (hit != other.end()) {
                    long long total = d + 1 + hit->second;
                    if (best == -1 || total < best) best = total;
                }
                queue.push_back(std::move(w));
            }
        }
    };
    long long du_front = 0, dv_front = 0;
    while (best == -1 || best > du_front + dv_front + 2) {
        if (qu.empty() && qv.empty()) break;
        if (!qu.empty() && (qu.size() <= qv.size() || qv.empty())) {
            expand(du, qu, dv);
            ++du_front;
        } else {
            expand(dv, qv, du);
            ++dv_front;
        }
    }
    if (best == -1)
        throw CapacityError("bidirectional search exhausted without reaching the target");
    return best;
}

std::vector<long long> DLGraph::distances_to(const HVertex& from,
                                             const std::vector<HVertex>& targets,
                                             std::size_t capacity) const {
    validate(from);
    std::unordered_map<HVertex, long long> want; // target -> slot
    for (std::size_t i = 0; i < targets.size(); ++i) want.emplace(targets[i], i);
    std::vector<long long> out(targets.size(), -1);
    std::size_t remaining = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        auto it = want.find(targets[i]);
        if (it->second == static_cast<long long>(i)) ++remaining; // unique targets
    }
    std::unordered_map<HVertex, long long> dist;
    std::deque<HVertex> queue;
    dist.emplace(from, 0);
    queue.push_back(from);
    auto record = [&](const HVertex& v, long long d) {
        auto it = want.find(v);
        if (it != want.end() && out[it->second] == -1) {
            out[it->second] = d;
            --remaining;
        }
    };
    record(from, 0);
    while (!queue.empty() && remaining > 0) {
        HVertex cur = queue.front();
        queue.pop_front();
        long long d = dist.at(cur);
        for (auto& w : neighbors(cur)) {
            if (dist.contains(w)) continue;
            if (dist.size() >= capacity)
                throw CapacityError("multi-target search exceeded the capacity of " +
                                    std::to_string(capacity) + " vertices");
            dist.emplace(w, d + 1);
            record(w, d + 1);
            queue.push_back(std::move(w));
        }
    }
    // copy distances onto duplicate targets
    for (std::size_t i = 0; i < targets.size(); ++i)
        if (out[i] == -1) out[i] = out[want.at(targets[i])];
    if (remaining > 0)
        throw CapacityError("multi-target search ended with unreachable targets");
    return out;
}

std::vector<long long> DLGraph::sphere_profile(const HVertex& base, int radius,
                                               std::size_t capacity) const {
    return ball(base, radius, capacity).layer_sizes;
}

namespace {

// Longest fundamental cycle of the ball's BFS tree: every non-tree edge
// (u,v) closes the tree paths to the join of u and v.
struct FundamentalCycle {
    int length = -1;
    std::vector<int> cycle;
};

FundamentalCycle best_bfs_fundamental(const Ball<HVertex>& ball) {
    FundamentalCycle best;
    const FiniteGraph& g = ball.graph;
    for (int u = 0; u < g.vertex_count(); ++u) {
        for (int v : g.adj[u]) {
            if (v < u) continue;
            if (ball.parent[u] == v || ball.parent[v] == u) continue;
            // climb both endpoints to the join
            int a = u, b = v;
            int len = 1;
            while (a != b) {
                if (ball.depth[a] >= ball.depth[b]) {
                    a = ball.parent[a];
                    ++len;
                } else {
                    b = ball.parent[b];
                    ++len;
                }
            }
            if (len > best.length) {
                best.length = len;
                // rebuild the two paths for extraction
                int join = a;
                std::vector<int> pu{u}, pv{v};
                while (pu.back() != join) pu.push_back(ball.parent[pu.back()]);
                while (pv.back() != join) pv.push_back(ball.parent[pv.back()]);
                best.cycle.assign(pu.begin(), pu.end());
                best.cycle.insert(best.cycle.end(), pv.rbegin() + 1, pv.rend());
            }
        }
    }
    return best;
}

// Longest back-edge cycle of an iterative DFS spanning tree. DFS paths wander
// far, so this finds much longer simple cycles than the BFS tree does.
FundamentalCycle best_dfs_fundamental(const FiniteGraph& g, int root) {
    FundamentalCycle best;
    int n = g.vertex_count();
    std::vector<int> parent(n, -2), depth(n, -1);
    std::vector<std::size_t> next(n, 0);
    std::vector<int> stack{root};
    parent[root] = -1;
    depth[root] = 0;
    std::vector<char> onStack(n, 0);
    onStack[root] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        if (next[u] < g.adj[u].size()) {
            int w = g.adj[u][next[u]++];
            if (parent[w] == -2) {
                parent[w] = u;
                depth[w] = depth[u] + 1;
                onStack[w] = 1;
                stack.push_back(w);
            } else if (onStack[w] && w != parent[u]) {
                int len = depth[u] - depth[w] + 1;
                if (len > best.length) {
                    best.length = len;
                    best.cycle.clear();
                    for (int v = u; v != parent[w]; v = parent[v]) best.cycle.push_back(v);
                }
            }
        } else {
            onStack[u] = 0;
            stack.pop_back();
        }
    }
    return best;
}

void verify_cycle(const FiniteGraph& g, const std::vector<int>& cycle) {
    if (cycle.size() < 3) throw Error("internal: degenerate cycle extracted");
    std::unordered_set<int> seen(cycle.begin(), cycle.end());
    if (seen.size() != cycle.size()) throw Error("internal: extracted cycle is not simple");
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (!g.adjacent(cycle[i], cycle[(i + 1) % cycle.size()]))
            throw Error("internal: extracted cycle is not closed");
}

} // namespace

CycleSearchResult DLGraph::find_long_cycle(const HVertex& base, int min_length, int max_radius,
                                           std::size_t capacity) const {
    if (min_length < 3) throw InvalidInputError("cycle length must be at least 3");
    validate(base);
    CycleSearchResult result;
    for (int r = 1; r <= max_radius; ++r) {
        result.radius_searched = r;
        Ball<HVertex> b = ball(base, r, capacity);
        std::vector<int> cycle;
        if (b.graph.vertex_count() <= 4000) {
            result.ball_girth = girth(b.graph);
            if (result.ball_girth >= min_length) cycle = shortest_cycle(b.graph);
            if (result.ball_girth > result.best_length) result.best_length = result.ball_girth;
        }
        if (cycle.empty()) {
            FundamentalCycle viaBfs = best_bfs_fundamental(b);
            FundamentalCycle viaDfs = best_dfs_fundamental(b.graph, 0);
            const FundamentalCycle& fund =
                viaDfs.length >= viaBfs.length ? viaDfs : viaBfs;
            if (fund.length > result.best_length) result.best_length = fund.length;
            if (fund.length >= min_length) cycle = fund.cycle;
        }
        if (!cycle.empty()) {
            verify_cycle(b.graph, cycle);
            result.found = true;
            result.cycle.reserve(cycle.size());
            for (int id : cycle) result.cycle.push_back(b.vertices[id]);
            return result;
        }
    }
    return result;
}

} // namespace dlgeo

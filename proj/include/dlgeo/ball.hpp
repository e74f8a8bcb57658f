#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "dlgeo/errors.hpp"
#include "dlgeo/graph.hpp"

namespace dlgeo {

/// A BFS ball: the induced graph on all vertices within a given radius of a
/// center, together with the vertex objects in BFS discovery order. The
/// discovery order is determined by the center and the neighbor enumeration
/// order, so identical inputs give identical balls.
template <class V>
struct Ball {
    FiniteGraph graph;
    std::vector<V> vertices;    // id -> vertex, BFS order, id 0 = center
    std::vector<int> depth;     // id -> BFS distance from the center
    std::vector<int> parent;    // id -> BFS tree parent id, -1 at the center
    std::vector<long long> layer_sizes; // |S_0|, ..., |S_radius|
    std::unordered_map<V, int> index;
    int radius = 0;

    int find(const V& v) const {
        auto it = index.find(v);
        return it == index.end() ? -1 : it->second;
    }
};

template <class V, class NeighborFn>
Ball<V> build_ball(const V& center, int radius, NeighborFn&& neighbors_of,
                   std::size_t capacity) {
    if (radius < 0) throw InvalidInputError("ball radius must be nonnegative");
    Ball<V> ball;
    ball.radius = radius;
    ball.vertices.push_back(center);
    ball.depth.push_back(0);
    ball.parent.push_back(-1);
    ball.index.emplace(center, 0);
    for (std::size_t head = 0; head < ball.vertices.size(); ++head) {
        if (ball.depth[head] == radius) break; // BFS order: all later ids are at full depth
        V u = ball.vertices[head];             // copy: the vector may reallocate below
        for (const V& w : neighbors_of(u)) {
            if (ball.index.contains(w)) continue;
            if (ball.vertices.size() >= capacity)
                throw CapacityError("ball capacity exceeded: more than " +
                                    std::to_string(capacity) + " vertices within radius " +
                                    std::to_string(radius));
            int id = static_cast<int>(ball.vertices.size());
            ball.index.emplace(w, id);
            ball.vertices.push_back(w);
            ball.depth.push_back(ball.depth[head] + 1);
            ball.parent.push_back(static_cast<int>(head));
        }
    }
    ball.layer_sizes.assign(radius + 1, 0);
    for (int d : ball.depth) ++ball.layer_sizes[d];
    // induced edges, including those between same-depth vertices
    ball.graph.adj.resize(ball.vertices.size());
    for (std::size_t id = 0; id < ball.vertices.size(); ++id) {
        for (const V& w : neighbors_of(ball.vertices[id])) {
            int other = ball.find(w);
            if (other >= 0 && static_cast<int>(id) < other)
                ball.graph.add_edge(static_cast<int>(id), other);
        }
    }
    ball.graph.sort_adjacency();
    return ball;
}

template <class V>
void attach_labels(Ball<V>& ball) {
    ball.graph.labels.clear();
    ball.graph.labels.reserve(ball.vertices.size());
    for (const V& v : ball.vertices) ball.graph.labels.push_back(v.to_string());
}

} // namespace dlgeo

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dlgeo/tree.hpp"

namespace dlgeo {

/// A vertex of the horosphere graph inside a product of two trees: the pair
/// of tree vertices whose heights sum to zero.
struct HVertex {
    TreeVertex x; // left tree
    TreeVertex y; // right tree

    bool operator==(const HVertex&) const = default;

    /// `[(hx | ...) , (hy | ...)]`
    std::string to_string() const;
};

struct CycleSearchResult {
    bool found = false;
    std::vector<HVertex> cycle;  // closed up to the wrap-around edge
    int radius_searched = 0;     // radius of the ball the cycle was found in,
                                 // or the last radius searched on failure
    int best_length = 0;         // longest simple cycle length seen
    int ball_girth = -1;         // girth of the last ball, -1 if unknown
};

/// The horosphere graph over a pair of coefficient groups: the level set
/// height(x) + height(y) = 0 in the product of the two trees, with edges
/// moving both coordinates at once — one coordinate steps down, the other
/// steps up, which is the only way the height constraint survives an edge.
/// With equal branchings q this is the Diestel-Leader graph DL(q,q); with
/// different branchings it is the mixed graph DL(q,r).
class DLGraph {
public:
    DLGraph(GroupPtr left_group, GroupPtr right_group);

    const Tree& left() const { return left_; }
    const Tree& right() const { return right_; }
    int left_branching() const { return left_.branching(); }
    int right_branching() const { return right_.branching(); }

    /// Degree of every vertex: q + r.
    int degree() const { return left_branching() + right_branching(); }

    /// The pair of tree roots.
    HVertex base() const { return HVertex{left_.root(), right_.root()}; }

    /// Throws unless heights sum to zero and both addresses are valid.
    void validate(const HVertex& v) const;

    /// q neighbors stepping the left coordinate down, then r stepping the
    /// right coordinate down; all heights keep summing to zero.
    std::vector<HVertex> neighbors(const HVertex& v) const;

    Ball<HVertex> ball(const HVertex& center, int radius,
                       std::size_t capacity = kDefaultCapacity) const;

    /// BFS distance in the horosphere graph.
    long long distance(const HVertex& u, const HVertex& v,
                       std::size_t capacity = kDefaultCapacity) const;

    /// Same value via a bidirectional search; used as a cross-check.
    long long distance_bidirectional(const HVertex& u, const HVertex& v,
                                     std::size_t capacity = kDefaultCapacity) const;

    /// BFS distances from `from` to every vertex of `targets`; one search.
    std::vector<long long> distances_to(const HVertex& from,
                                        const std::vector<HVertex>& targets,
                                        std::size_t capacity = kDefaultCapacity) const;

    /// BFS layer sizes |S_0|, ..., |S_radius| around a base vertex.
    std::vector<long long> sphere_profile(const HVertex& base, int radius,
                                          std::size_t capacity = kDefaultCapacity) const;

    /// Searches balls of increasing radius for a simple cycle of length at
    /// least min_length. Per radius the search is exact for shortest cycles
    /// (girth) and otherwise takes the best fundamental cycle of the BFS and
    /// DFS spanning trees, so the reported radius is the first one at which
    /// this detector fires.
    CycleSearchResult find_long_cycle(const HVertex& base, int min_length, int max_radius,
                                      std::size_t capacity = kDefaultCapacity) const;

    bool compatible(const DLGraph& o) const {
        return left_.compatible(o.left_) && right_.compatible(o.right_);
    }

private:
    Tree left_;
    Tree right_;
};

} // namespace dlgeo

template <>
struct std::hash<dlgeo::HVertex> {
    std::size_t operator()(const dlgeo::HVertex& v) const {
        return dlgeo::hash_combine(std::hash<dlgeo::TreeVertex>{}(v.x),
                                   std::hash<dlgeo::TreeVertex>{}(v.y));
    }
};

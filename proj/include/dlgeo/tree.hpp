#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dlgeo/ball.hpp"
#include "dlgeo/laurent.hpp"

namespace dlgeo {

/// Default cap on vertices per generated ball.
inline constexpr std::size_t kDefaultCapacity = 5'000'000;

/// Canonical vertex of the (q+1)-valent tree built from Laurent series over a
/// group of order q: an integer height plus the finite address that survives
/// the gluing relation. Two series land on the same vertex at height t
/// exactly when they agree at all indices <= -t-1, so the address keeps just
/// those coefficients.
struct TreeVertex {
    int height = 0;
    CoeffVec address; // canonical; every index <= -height-1

    bool operator==(const TreeVertex&) const = default;

    /// `(h | i:g, j:h, ...)`
    std::string to_string() const;
};

/// The tree itself, as a context object over a coefficient group: vertex
/// construction, adjacency, distances, balls, and the affine action of
/// series and shifts. Vertices are plain values; everything here is pure.
class Tree {
public:
    explicit Tree(GroupPtr group);

    const FiniteGroup& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }

    /// Branching factor q = |G|; every vertex has degree q+1.
    int branching() const { return group_->order(); }

    TreeVertex root() const { return TreeVertex{}; }

    /// The vertex at height t on the line of the series a.
    TreeVertex vertex_of(const GroupLaurent& a, int t) const;

    /// Validated construction from raw parts.
    TreeVertex make_vertex(int height, CoeffVec address) const;

    /// A series whose line passes through v (the minimal-support one).
    GroupLaurent representative(const TreeVertex& v) const;

    /// The neighbor toward the distinguished end: height+1, top address
    /// entry dropped.
    TreeVertex parent(const TreeVertex& v) const;

    /// q children at height-1, one per group element in index order; the
    /// identity child leaves the address unchanged.
    std::vector<TreeVertex> children(const TreeVertex& v) const;

    /// parent first, then children.
    std::vector<TreeVertex> neighbors(const TreeVertex& v) const;

    /// Graph distance: both vertices climb parent steps to their join.
    long long distance(const TreeVertex& u, const TreeVertex& v) const;

    static int height_of(const TreeVertex& v) { return v.height; }

    /// a . rho_b(t) = rho_{ab}(t): left-multiplies the visible address.
    TreeVertex act_series(const GroupLaurent& a, const TreeVertex& v) const;

    /// n . rho_a(t) = rho_{n.a}(t+n): raises the height, reindexes the address.
    TreeVertex act_shift(int n, const TreeVertex& v) const;

    /// (a,n) . x = a . (n . x)
    TreeVertex act_affine(const GroupLaurent& a, int n, const TreeVertex& v) const;

    /// Number of vertices within radius r, computed before any allocation.
    /// Saturates at cap+1 so callers can compare against a capacity.
    static long long projected_ball_size(int q, int r, long long cap);

    Ball<TreeVertex> ball(const TreeVertex& center, int radius,
                          std::size_t capacity = kDefaultCapacity) const;

    bool compatible(const Tree& other) const { return same_group(*group_, *other.group_); }

private:
    void require_mine(const GroupLaurent& a, const char* op) const;

    GroupPtr group_;
};

/// Parses the `(h | i:g, ...)` text form.
TreeVertex parse_tree_vertex(const std::string& text, const Tree& tree);

} // namespace dlgeo

template <>
struct std::hash<dlgeo::TreeVertex> {
    std::size_t operator()(const dlgeo::TreeVertex& v) const {
        std::size_t h = std::hash<int>{}(v.height);
        for (const auto& [i, e] : v.address)
            h = dlgeo::hash_combine(h, dlgeo::hash_combine(std::hash<int>{}(i),
                                                           std::hash<int>{}(e)));
        return h;
    }
};

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include <boost/rational.hpp>

#include "dlgeo/lamplighter.hpp"

namespace dlgeo {

using Rational = boost::rational<long long>;

/// "n" when integral, "n/d" otherwise.
std::string rational_to_string(const Rational& r);

/// One sampled pair: a distance in the source space and the distance of the
/// two image points.
struct DistancePair {
    long long source = 0;
    long long image = 0;
};

struct QIViolation {
    std::size_t pair_index = 0;
    DistancePair pair;
    bool lower_bound = false; // which of the two inequalities failed
};

/// First pair violating (1/K) d - C <= d' <= K d + C, if any. K >= 1, C >= 0.
std::optional<QIViolation> find_qi_violation(std::span<const DistancePair> pairs,
                                             const Rational& K, const Rational& C);

/// Smallest C that makes every pair satisfy both inequalities at this K:
/// max over pairs of max(d' - K d, d/K - d', 0).
Rational additive_gap(std::span<const DistancePair> pairs, const Rational& K);

/// Measured quasi-isometry data. The reported (K, C) satisfy both
/// inequalities on every checked pair; density is the radius within which
/// every sampled codomain point has an image point.
struct QIReport {
    Rational K{1};
    Rational C{0};
    long long pairs_checked = 0;
    long long density = 0;
    std::string domain;
    std::string codomain;

    std::string to_json() const;
};

/// {1, 9/8, 5/4, 3/2, 2, 3, ..., 16}
std::vector<Rational> default_k_grid();

/// Per grid point computes the minimal C, reports the point minimizing C,
/// ties to the smaller K. Throws on an empty pair set.
QIReport fit_qi(std::span<const DistancePair> pairs, std::span<const Rational> k_grid);

/// Sup distance of two maps evaluated on the same finite sample: the largest
/// pointwise distance.
template <class P, class Dist>
long long map_equivalent(const std::vector<P>& f_samples, const std::vector<P>& g_samples,
                         Dist&& dist) {
    if (f_samples.size() != g_samples.size())
        throw IncompatibleError("map_equivalent: sample domains differ in size");
    long long worst = 0;
    for (std::size_t i = 0; i < f_samples.size(); ++i)
        worst = std::max(worst, static_cast<long long>(dist(f_samples[i], g_samples[i])));
    return worst;
}

/// Hausdorff distance between nonempty vertex subsets of a finite graph,
/// by multi-source BFS from each side. Throws on an empty side or if one
/// side cannot reach the other inside the ambient graph.
long long hausdorff(const std::vector<int>& a, const std::vector<int>& b,
                    const FiniteGraph& ambient);

/// BFS distance in the horosphere graph from a vertex to the nearest member
/// of a target set.
long long h_set_distance(const DLGraph& dl, const HVertex& from,
                         const std::unordered_set<HVertex>& targets,
                         std::size_t capacity = kDefaultCapacity);

/// Hausdorff distance between two finite subsets of a horosphere graph,
/// measured in the full graph rather than a truncated ambient ball.
long long hausdorff_h(const DLGraph& dl, const std::vector<HVertex>& a,
                      const std::vector<HVertex>& b,
                      std::size_t capacity = kDefaultCapacity);

/// The height-collapsing quasi-isometry from the tree over G onto the tree
/// over G^k: any path that the height function carries onto an interval
/// [(l-1)k, lk-1] collapses to one vertex, so heights map to floor(h/k) and
/// addresses are repacked k old indices per new index through the digit
/// encoding of G^k, padding the partially visible top block with the
/// identity.
class CollapseMap {
public:
    CollapseMap(GroupPtr group, int k);

    int k() const { return k_; }
    const Tree& source_tree() const { return src_tree_; }
    const Tree& target_tree() const { return dst_tree_; }
    const DLGraph& source_dl() const { return src_dl_; }
    const DLGraph& target_dl() const { return dst_dl_; }
    const GroupPtr& target_group() const { return dst_; }

    TreeVertex apply(const TreeVertex& v) const;

    struct HImage {
        HVertex vertex;
        bool corrected = false; // a parent step restored the height constraint
    };

    /// Collapses both coordinates; when the floored heights sum to -1 the
    /// right coordinate takes one parent step, deterministically.
    HImage apply_h(const HVertex& v) const;

private:
    GroupPtr src_;
    GroupPtr dst_;
    Tree src_tree_;
    Tree dst_tree_;
    DLGraph src_dl_;
    DLGraph dst_dl_;
    int k_;
};

/// The relabeling isometry between horosphere graphs over coefficient groups
/// of equal order |G|^k = |H|^j: tree adjacency depends only on the heights
/// and address indices, so reinterpreting addresses through the index-order
/// bijection G^k <-> H^j is a graph isomorphism. Throws HypothesisError when
/// the orders differ.
class RelabelIso {
public:
    RelabelIso(GroupPtr g, int k, GroupPtr h, int j);

    const DLGraph& left_dl() const { return left_; }
    const DLGraph& right_dl() const { return right_; }

    TreeVertex map_tree(const TreeVertex& v) const;
    HVertex map(const HVertex& v) const;

private:
    DLGraph left_;
    DLGraph right_;
};

/// Root-preserving graph isomorphism test: BFS-layer color refinement to
/// stable colors, then backtracking over the ambiguous cells. The budget
/// bounds the number of search nodes; exceeding it throws CapacityError.
bool ball_isomorphic(const FiniteGraph& g1, int root1, const FiniteGraph& g2, int root2,
                     long long budget = 4'000'000);

/// Measures the orbit map u -> u . base from the word metric on a Cayley
/// ball (edge generators) into the horosphere graph, and fits (K, C).
QIReport orbit_qi_report(const Lamplighter& lamp, int radius,
                         std::span<const Rational> k_grid,
                         std::size_t capacity = kDefaultCapacity);

struct CollapseReport {
    QIReport qi;              // fit of (d, d') over tree-ball pairs
    Rational max_defect{0};   // max |d' - d/k|
    long long hausdorff_distance = 0;
    long long corrected = 0;  // collapse_h corrections in the H-ball image
    int tree_radius = 0;
    int h_radius = 0;

    std::string to_json() const;
};

/// Collapse experiment: all-pairs metric comparison on a tree ball plus the
/// Hausdorff distance between the collapsed image of an H-ball of radius
/// h_radius and the target H-ball of radius h_radius/k.
CollapseReport collapse_experiment(GroupPtr group, int k, int tree_radius, int h_radius,
                                   std::span<const Rational> k_grid,
                                   std::size_t capacity = kDefaultCapacity);

} // namespace dlgeo

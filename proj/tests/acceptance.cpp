// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Exit code 0 only if every criterion holds.

#include <algorithm>
#include <chrono>
#include <cstring>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "dlgeo/qi.hpp"
#include "dlgeo/sampling.hpp"

using namespace dlgeo;

namespace {

struct Criterion {
    int id;
    std::string title;
    bool (*run)(std::string& detail);
};

// ---------------------------------------------------------------- helpers

FiniteGroup symmetric3() {
    // permutations of {0,1,2} in lex order, composed as (p*q)(x) = p(q(x))
    std::vector<std::array<int, 3>> ps;
    std::array<int, 3> p{0, 1, 2};
    do {
        ps.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    auto index_of = [&](const std::array<int, 3>& target) {
        return static_cast<int>(std::find(ps.begin(), ps.end(), target) - ps.begin());
    };
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            std::array<int, 3> c;
            for (int x = 0; x < 3; ++x) c[x] = ps[a][ps[b][x]];
            table[a][b] = index_of(c);
        }
    return FiniteGroup::from_table(table);
}

std::vector<GroupLaurent> window_series(const GroupPtr& g, int lo, int hi) {
    std::vector<GroupLaurent> out{GroupLaurent(g)};
    for (int i = lo; i <= hi; ++i) {
        std::vector<GroupLaurent> next;
        for (const auto& s : out)
            for (int e = 0; e < g->order(); ++e) {
                CoeffVec c = s.coeffs();
                if (e != FiniteGroup::kIdentity) c.emplace_back(i, e);
                next.emplace_back(g, std::move(c));
            }
        out = std::move(next);
    }
    return out;
}

bool brute_isomorphic(const FiniteGraph& g1, int root1, const FiniteGraph& g2, int root2) {
    int n = g1.vertex_count();
    if (n != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return false;
    std::vector<int> others;
    for (int v = 0; v < n; ++v)
        if (v != root2) others.push_back(v);
    do {
        std::vector<int> map(n);
        map[root1] = root2;
        int k = 0;
        for (int v = 0; v < n; ++v)
            if (v != root1) map[v] = others[k++];
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int w = u + 1; w < n && ok; ++w)
                if (g1.adjacent(u, w) != g2.adjacent(map[u], map[w])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(others.begin(), others.end()));
    return false;
}

// ---------------------------------------------------------------- criteria

// 1. exact ultrametric and bi-invariance over Z/2, Z/3, S3
bool criterion1(std::string& detail) {
    std::vector<GroupPtr> groups{make_cyclic(2), make_cyclic(3),
                                 std::make_shared<const FiniteGroup>(symmetric3())};
    long long triples = 0;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const GroupPtr& g = groups[gi];
        Sampler rng(2024 + gi);
        for (int t = 0; t < 10000; ++t) {
            GroupLaurent a = rng.series(g, -4, 4);
            GroupLaurent b = rng.series(g, -4, 4);
            GroupLaurent c = rng.series(g, -4, 4);
            if (!(ldist(a, c) >= std::min(ldist(a, b), ldist(b, c)))) return false;
            if (!(ldist(lmul(c, a), lmul(c, b)) == ldist(a, b))) return false;
            if (!(ldist(lmul(a, c), lmul(b, c)) == ldist(a, b))) return false;
            ++triples;
        }
    }
    detail = std::to_string(triples) + " triples over 3 groups, zero violations";
    return true;
}

// 2. (q+1)-regularity on radius-6 balls and the exhaustive gluing predicate
bool criterion2(std::string& detail) {
    std::ostringstream note;
    for (int q : {2, 3, 4}) {
        GroupPtr g = make_cyclic(q);
        Tree tree(g);
        Ball<TreeVertex> ball = tree.ball(tree.root(), 6);
        for (int v = 0; v < ball.graph.vertex_count(); ++v) {
            auto nb = tree.neighbors(ball.vertices[v]);
            std::set<std::string> distinct;
            for (const auto& w : nb) distinct.insert(w.to_string());
            if (static_cast<int>(nb.size()) != q + 1 || distinct.size() != nb.size())
                return false;
            if (ball.depth[v] < 6 && ball.graph.degree(v) != q + 1) return false;
        }
        // exhaustive window pair set, sized per order to stay desk-scale
        int lo = -2, hi = (q == 2) ? 2 : (q == 3 ? 1 : 0);
        auto series = window_series(g, lo, hi);
        long long pairs = 0;
        for (const auto& a : series)
            for (const auto& b : series)
                for (int t = -4; t <= 4; ++t) {
                    Valuation v = ldist(a, b);
                    bool glued = !v.is_finite() || t >= -v.value();
                    if ((tree.vertex_of(a, t) == tree.vertex_of(b, t)) != glued) return false;
                    ++pairs;
                }
        note << "q=" << q << ": ball " << ball.graph.vertex_count() << " vertices, " << pairs
             << " gluing checks; ";
    }
    detail = note.str();
    return true;
}

// 3. all four actions are height-equivariant graph automorphisms on radius-5 balls
bool criterion3(std::string& detail) {
    long long edgeChecks = 0;
    for (int q : {2, 3}) {
        GroupPtr g = make_cyclic(q);
        Tree tree(g);
        Ball<TreeVertex> ball = tree.ball(tree.root(), 5);
        Sampler rng(333 + q);
        for (int rep = 0; rep < 5; ++rep) {
            GroupLaurent a = rng.series(g, -6, 6);
            int n = static_cast<int>(rng.integer(-3, 3));
            for (int u = 0; u < ball.graph.vertex_count(); ++u) {
                const TreeVertex& vu = ball.vertices[u];
                TreeVertex su = tree.act_series(a, vu);
                TreeVertex hu = tree.act_shift(n, vu);
                TreeVertex au = tree.act_affine(a, n, vu);
                if (Tree::height_of(su) != Tree::height_of(vu)) return false;
                if (Tree::height_of(hu) != Tree::height_of(vu) + n) return false;
                if (!(au == tree.act_series(a, tree.act_shift(n, vu)))) return false;
                for (int w : ball.graph.adj[u]) {
                    if (w < u) continue;
                    const TreeVertex& vw = ball.vertices[w];
                    auto adjacentInTree = [&](const TreeVertex& x, const TreeVertex& y) {
                        return tree.parent(x) == y || tree.parent(y) == x;
                    };
                    if (!adjacentInTree(su, tree.act_series(a, vw))) return false;
                    if (!adjacentInTree(hu, tree.act_shift(n, vw))) return false;
                    if (!adjacentInTree(au, tree.act_affine(a, n, vw))) return false;
                    edgeChecks += 3;
                }
            }
        }
    }
    // twisted diagonal action on the horosphere
    Lamplighter lamp(make_cyclic(2));
    const DLGraph& dl = lamp.dl();
    Ball<HVertex> hball = dl.ball(dl.base(), 5);
    Sampler rng(999);
    for (int rep = 0; rep < 5; ++rep) {
        LampElement u = rng.lamp(lamp, 3);
        for (int a = 0; a < hball.graph.vertex_count(); ++a) {
            HVertex ua = lamp.act(u, hball.vertices[a]);
            if (ua.x.height != hball.vertices[a].x.height + u.shift) return false;
            if (ua.x.height + ua.y.height != 0) return false;
            for (int b : hball.graph.adj[a]) {
                if (b < a) continue;
                HVertex ub = lamp.act(u, hball.vertices[b]);
                auto nb = dl.neighbors(ua);
                if (std::find(nb.begin(), nb.end(), ub) == nb.end()) return false;
                ++edgeChecks;
            }
        }
    }
    detail = std::to_string(edgeChecks) + " automorphism edge checks, exact heights";
    return true;
}

// 4. horosphere degree 2|G| (and 5 for the mixed graph) on radius-8 balls
bool criterion4(std::string& detail) {
    std::ostringstream note;
    auto check = [&](const DLGraph& dl, int expectedDegree, const std::string& name) {
        Ball<HVertex> ball = dl.ball(dl.base(), 8);
        for (int v = 0; v < ball.graph.vertex_count(); ++v) {
            auto nb = dl.neighbors(ball.vertices[v]);
            std::set<std::string> distinct;
            for (const auto& w : nb) distinct.insert(w.to_string());
            if (static_cast<int>(nb.size()) != expectedDegree || distinct.size() != nb.size())
                return false;
            if (ball.depth[v] < 8 && ball.graph.degree(v) != expectedDegree) return false;
        }
        if (!is_connected(ball.graph)) return false;
        note << name << ": " << ball.graph.vertex_count() << " vertices; ";
        return true;
    };
    for (int q : {2, 3, 4}) {
        DLGraph dl(make_cyclic(q), make_cyclic(q));
        if (!check(dl, 2 * q, "DL(" + std::to_string(q) + "," + std::to_string(q) + ")"))
            return false;
    }
    DLGraph mixed(make_cyclic(2), make_cyclic(3));
    if (!check(mixed, 5, "DL(2,3)")) return false;
    detail = note.str();
    return true;
}

// 5. properness and cocompactness evidence plus the orbit-map fit
bool criterion5(std::string& detail) {
    std::ostringstream note;
    for (int q : {2, 3}) {
        Lamplighter lamp(make_cyclic(q));
        const DLGraph& dl = lamp.dl();

        auto stab = lamp.stabilizer(dl.base(), 8);
        if (stab.size() != static_cast<std::size_t>(q)) return false;

        Ball<HVertex> ball = dl.ball(dl.base(), 5);
        OrbitCover cover = lamp.orbit_covers(ball, 8);
        if (!cover.covered) return false;
        for (std::size_t i = 0; i < ball.vertices.size(); ++i)
            if (!(lamp.act(*cover.witness[i], dl.base()) == ball.vertices[i])) return false;

        auto gens = lamp.edge_generators();
        auto grid = default_k_grid();
        Rational lastC(-1);
        Rational lastGap1(-1);
        for (int r = 3; r <= 6; ++r) {
            Ball<LampElement> words = lamp.cayley_ball(gens, r);
            std::vector<HVertex> images;
            images.reserve(words.vertices.size());
            for (const auto& w : words.vertices) images.push_back(lamp.act(w, dl.base()));
            auto dh = dl.distances_to(dl.base(), images);
            std::vector<DistancePair> pairs(words.vertices.size());
            for (std::size_t i = 0; i < pairs.size(); ++i)
                pairs[i] = DistancePair{words.depth[i], dh[i]};
            QIReport fit = fit_qi(pairs, grid);
            if (find_qi_violation(pairs, fit.K, fit.C)) return false;
            // fitted C may not grow as the radius does
            if (lastC >= Rational(0) && fit.C > lastC) return false;
            lastC = fit.C;
            lastGap1 = additive_gap(pairs, Rational(1));
            if (r == 6)
                note << "q=" << q << ": stab " << stab.size() << ", cover "
                     << ball.graph.vertex_count() << " vertices, fit K="
                     << rational_to_string(fit.K) << " C=" << rational_to_string(fit.C)
                     << " (C at K=1: " << rational_to_string(lastGap1) << "); ";
        }
        // measured plateau, frozen: the grid fit settles at C = 1/8 and the
        // unit-slope additive constant at 2, independent of the radius
        if (lastC != Rational(1, 8)) return false;
        if (lastGap1 != Rational(2)) return false;
    }
    detail = note.str();
    return true;
}

// 6. the collapsing quasi-isometry: relabeling isometry, Hausdorff bound,
//    metric law |d' - d/k| <= 2 on all radius-8 pairs
bool criterion6(std::string& detail) {
    RelabelIso iso(make_cyclic(2), 2, make_cyclic(4), 1);
    Ball<HVertex> left = iso.left_dl().ball(iso.left_dl().base(), 5);
    Ball<HVertex> right = iso.right_dl().ball(iso.right_dl().base(), 5);
    if (!ball_isomorphic(left.graph, 0, right.graph, 0)) return false;

    auto grid = default_k_grid();
    CollapseReport rep = collapse_experiment(make_cyclic(2), 2, 8, 4, grid);
    if (!(rep.max_defect <= Rational(2))) return false;
    if (rep.hausdorff_distance > 3) return false;

    std::ostringstream note;
    note << "isometric radius-5 balls (" << left.graph.vertex_count() << " vertices); "
         << rep.qi.pairs_checked << " tree pairs, max |d' - d/k| = "
         << rational_to_string(rep.max_defect) << "; Hausdorff " << rep.hausdorff_distance
         << " (" << rep.corrected << " height corrections)";
    detail = note.str();
    return true;
}

// 7. sphere profiles of the mixed graph agree from 10 random basepoints
bool criterion7(std::string& detail) {
    DLGraph dl(make_cyclic(2), make_cyclic(3));
    auto reference = dl.sphere_profile(dl.base(), 8);
    Sampler rng(777);
    for (int b = 0; b < 10; ++b) {
        HVertex v = rng.h_vertex(dl, 4, 5);
        if (dl.sphere_profile(v, 8) != reference) return false;
    }
    std::ostringstream note;
    note << "profile";
    for (long long s : reference) note << " " << s;
    note << " from 10 basepoints";
    detail = note.str();
    return true;
}

// 8. loops of length >= 20 exist within the capacity
bool criterion8(std::string& detail) {
    DLGraph dl(make_cyclic(2), make_cyclic(2));
    CycleSearchResult r = dl.find_long_cycle(dl.base(), 20, 12);
    if (!r.found) return false;
    std::unordered_set<HVertex> distinct(r.cycle.begin(), r.cycle.end());
    if (distinct.size() != r.cycle.size() || r.cycle.size() < 20) return false;
    for (std::size_t i = 0; i < r.cycle.size(); ++i)
        if (dl.distance(r.cycle[i], r.cycle[(i + 1) % r.cycle.size()]) != 1) return false;
    detail = "simple cycle of length " + std::to_string(r.cycle.size()) + " at radius " +
             std::to_string(r.radius_searched);
    return true;
}

// 9. oracle equivalences: tree distance vs BFS, isomorphism vs brute force,
//    wreath-product laws on 10^4 random triples
bool criterion9(std::string& detail) {
    Tree tree(make_cyclic(2));
    Ball<TreeVertex> ball = tree.ball(tree.root(), 4);
    for (int u = 0; u < ball.graph.vertex_count(); ++u) {
        auto d = bfs_distances(ball.graph, u);
        for (int v = 0; v < ball.graph.vertex_count(); ++v)
            if (tree.distance(ball.vertices[u], ball.vertices[v]) != d[v]) return false;
    }

    Sampler rng(4242);
    int isoCases = 0;
    for (int t = 0; t < 24; ++t) {
        int n = static_cast<int>(rng.integer(5, 10));
        FiniteGraph g;
        g.adj.resize(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.integer(0, 99) < 40) g.add_edge(u, v);
        g.sort_adjacency();
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.integer(0, i)]);
        FiniteGraph h;
        h.adj.resize(n);
        for (int u = 0; u < n; ++u)
            for (int w : g.adj[u])
                if (u < w) h.add_edge(perm[u], perm[w]);
        h.sort_adjacency();
        int root = static_cast<int>(rng.integer(0, n - 1));
        if (ball_isomorphic(g, root, h, perm[root]) != brute_isomorphic(g, root, h, perm[root]))
            return false;
        // flip one adjacency and compare again
        FiniteGraph p = g;
        int a = static_cast<int>(rng.integer(0, n - 1));
        int b = static_cast<int>(rng.integer(0, n - 1));
        if (a != b) {
            if (p.adjacent(a, b)) {
                p.adj[a].erase(std::find(p.adj[a].begin(), p.adj[a].end(), b));
                p.adj[b].erase(std::find(p.adj[b].begin(), p.adj[b].end(), a));
            } else {
                p.add_edge(a, b);
                p.sort_adjacency();
            }
            if (ball_isomorphic(g, root, p, root) != brute_isomorphic(g, root, p, root))
                return false;
        }
        ++isoCases;
    }

    Lamplighter lamp(make_cyclic(3));
    for (int t = 0; t < 10000; ++t) {
        LampElement a = rng.lamp(lamp, 3);
        LampElement b = rng.lamp(lamp, 3);
        LampElement c = rng.lamp(lamp, 3);
        if (!(lamp.mul(lamp.mul(a, b), c) == lamp.mul(a, lamp.mul(b, c)))) return false;
        if (!(lamp.mul(a, lamp.inv(a)) == lamp.identity())) return false;
        if (!(lamp.inv(lamp.mul(a, b)) == lamp.mul(lamp.inv(b), lamp.inv(a)))) return false;
    }
    detail = "tree BFS oracle, " + std::to_string(isoCases) +
             " isomorphism oracle cases, 10^4 wreath triples";
    return true;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }
    std::vector<Criterion> criteria{
        {1, "ultrametric and bi-invariance (Z/2, Z/3, S3)", criterion1},
        {2, "tree regularity and gluing soundness", criterion2},
        {3, "actions are height-equivariant automorphisms", criterion3},
        {4, "horosphere degree and connectivity", criterion4},
        {5, "properness, cocompactness, orbit-map fit", criterion5},
        {6, "collapsing quasi-isometry and relabeling isometry", criterion6},
        {7, "mixed-graph transitivity evidence", criterion7},
        {8, "loops of unbounded diameter", criterion8},
        {9, "oracle equivalences", criterion9},
    };
    bool all = true;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " ["
                  << ms << " ms]";
        if (!detail.empty()) std::cout << " -- " << detail;
        std::cout << "\n";
        all = all && ok;
    }
    return all ? 0 : 1;
}

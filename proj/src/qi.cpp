#include "dlgeo/qi.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <unordered_map>

#include <json.hpp>

#include "dlgeo/util.hpp"

namespace dlgeo {

std::string rational_to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::optional<QIViolation> find_qi_violation(std::span<const DistancePair> pairs,
                                             const Rational& K, const Rational& C) {
    if (K < Rational(1)) throw InvalidInputError("K must be at least 1");
    if (C < Rational(0)) throw InvalidInputError("C must be nonnegative");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        Rational src(pairs[i].source);
        Rational img(pairs[i].image);
        if (img > K * src + C) return QIViolation{i, pairs[i], false};
        if (img < src / K - C) return QIViolation{i, pairs[i], true};
    }
    return std::nullopt;
}

Rational additive_gap(std::span<const DistancePair> pairs, const Rational& K) {
    Rational c(0);
    for (const auto& p : pairs) {
        Rational src(p.source);
        Rational img(p.image);
        c = std::max(c, img - K * src);
        c = std::max(c, src / K - img);
    }
    return std::max(c, Rational(0));
}

std::vector<Rational> default_k_grid() {
    std::vector<Rational> grid{Rational(1), Rational(9, 8), Rational(5, 4), Rational(3, 2)};
    for (int k = 2; k <= 16; ++k) grid.emplace_back(k);
    return grid;
}

QIReport fit_qi(std::span<const DistancePair> pairs, std::span<const Rational> k_grid) {
    if (pairs.empty()) throw InvalidInputError("fit_qi: empty pair set");
    if (k_grid.empty()) throw InvalidInputError("fit_qi: empty K grid");
    std::vector<Rational> grid(k_grid.begin(), k_grid.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    QIReport report;
    bool first = true;
    for (const Rational& k : grid) {
        if (k < Rational(1)) throw InvalidInputError("fit_qi: grid K below 1");
        Rational c = additive_gap(pairs, k);
        if (first || c < report.C) { // ascending grid, so ties keep the smaller K
            report.K = k;
            report.C = c;
            first = false;
        }
    }
    report.pairs_checked = static_cast<long long>(pairs.size());
    if (find_qi_violation(pairs, report.K, report.C))
        throw Error("internal: fitted constants fail their own pair set");
    return report;
}

std::string QIReport::to_json() const {
    nlohmann::json j;
    j["K"] = rational_to_string(K);
    j["C"] = rational_to_string(C);
    j["pairs"] = pairs_checked;
    j["density"] = density;
    j["domain"] = domain;
    j["codomain"] = codomain;
    return j.dump();
}

long long hausdorff(const std::vector<int>& a, const std::vector<int>& b,
                    const FiniteGraph& ambient) {
    if (a.empty() || b.empty()) throw InvalidInputError("hausdorff: empty vertex set");
    auto fromA = bfs_distances(ambient, a);
    auto fromB = bfs_distances(ambient, b);
    long long worst = 0;
    for (int v : a) {
        if (fromB[v] < 0) throw CapacityError("hausdorff: sets not connected in the ambient graph");
        worst = std::max(worst, static_cast<long long>(fromB[v]));
    }
    for (int v : b) {
        if (fromA[v] < 0) throw CapacityError("hausdorff: sets not connected in the ambient graph");
        worst = std::max(worst, static_cast<long long>(fromA[v]));
    }
    return worst;
}

long long h_set_distance(const DLGraph& dl, const HVertex& from,
                         const std::unordered_set<HVertex>& targets, std::size_t capacity) {
    if (targets.empty()) throw InvalidInputError("h_set_distance: empty target set");
    if (targets.contains(from)) return 0;
    std::unordered_map<HVertex, long long> dist;
    std::deque<HVertex> queue;
    dist.emplace(from, 0);
    queue.push_back(from);
    while (!queue.empty()) {
        HVertex cur = queue.front();
        queue.pop_front();
        long long d = dist.at(cur);
        for (auto& w : dl.neighbors(cur)) {
            if (dist.contains(w)) continue;
            if (targets.contains(w)) return d + 1;
            if (dist.size() >= capacity)
                throw CapacityError("set distance search exceeded the capacity of " +
                                    std::to_string(capacity) + " vertices");
            dist.emplace(w, d + 1);
            queue.push_back(std::move(w));
        }
    }
    throw CapacityError("set distance search exhausted without reaching the target set");
}

long long hausdorff_h(const DLGraph& dl, const std::vector<HVertex>& a,
                      const std::vector<HVertex>& b, std::size_t capacity) {
    if (a.empty() || b.empty()) throw InvalidInputError("hausdorff_h: empty vertex set");
    std::unordered_set<HVertex> setA(a.begin(), a.end());
    std::unordered_set<HVertex> setB(b.begin(), b.end());
    long long worst = 0;
    for (const auto& v : a) worst = std::max(worst, h_set_distance(dl, v, setB, capacity));
    for (const auto& v : b) worst = std::max(worst, h_set_distance(dl, v, setA, capacity));
    return worst;
}

CollapseMap::CollapseMap(GroupPtr group, int k)
    : src_(std::move(group)),
      dst_(k == 1 ? src_ : make_power(*src_, k)),
      src_tree_(src_),
      dst_tree_(dst_),
      src_dl_(src_, src_),
      dst_dl_(dst_, dst_),
      k_(k) {
    if (k < 1) throw InvalidInputError("collapse block size must be >= 1");
}

TreeVertex CollapseMap::apply(const TreeVertex& v) const {
    int newHeight = static_cast<int>(floor_div(v.height, k_));
    CoeffVec addr;
    if (!v.address.empty()) {
        auto coeff_at = [&](int idx) {
            auto it = std::lower_bound(v.address.begin(), v.address.end(), idx,
                                       [](const auto& e, int key) { return e.first < key; });
            return (it != v.address.end() && it->first == idx) ? it->second
                                                               : FiniteGroup::kIdentity;
        };
        int jLo = static_cast<int>(floor_div(v.address.front().first, k_));
        int jHi = -newHeight - 1;
        std::vector<int> comps(k_);
        for (int j = jLo; j <= jHi; ++j) {
            for (int i = 0; i < k_; ++i) {
                int oldIdx = j * k_ + i;
                // indices above the visible window pad with the identity
                comps[i] = (oldIdx <= -v.height - 1) ? coeff_at(oldIdx) : FiniteGroup::kIdentity;
            }
            long long packed = FiniteGroup::encode_power(comps, src_->order());
            if (packed != FiniteGroup::kIdentity)
                addr.emplace_back(j, static_cast<int>(packed));
        }
    }
    return dst_tree_.make_vertex(newHeight, std::move(addr));
}

CollapseMap::HImage CollapseMap::apply_h(const HVertex& v) const {
    src_dl_.validate(v);
    TreeVertex left = apply(v.x);
    TreeVertex right = apply(v.y);
    bool corrected = false;
    if (left.height + right.height != 0) {
        // floor rounding leaves the sum at -1; one parent step restores it
        right = dst_tree_.parent(right);
        corrected = true;
    }
    if (left.height + right.height != 0)
        throw Error("internal: collapse height correction failed");
    return HImage{HVertex{std::move(left), std::move(right)}, corrected};
}

namespace {

long long checked_pow(long long base, int exp) {
    long long out = 1;
    for (int i = 0; i < exp; ++i) {
        if (out > (1LL << 40) / base) return -1; // far beyond any valid group order
        out *= base;
    }
    return out;
}

} // namespace

RelabelIso::RelabelIso(GroupPtr g, int k, GroupPtr h, int j)
    : left_((k == 1 ? g : make_power(*g, k)), (k == 1 ? g : make_power(*g, k))),
      right_((j == 1 ? h : make_power(*h, j)), (j == 1 ? h : make_power(*h, j))) {
    if (k < 1 || j < 1) throw InvalidInputError("relabeling exponents must be >= 1");
    long long lo = checked_pow(g->order(), k);
    long long ro = checked_pow(h->order(), j);
    if (lo != ro || lo < 0)
        throw HypothesisError("relabeling requires |G|^k = |H|^j, got " +
                              std::to_string(g->order()) + "^" + std::to_string(k) + " vs " +
                              std::to_string(h->order()) + "^" + std::to_string(j));
}

TreeVertex RelabelIso::map_tree(const TreeVertex& v) const {
    // same heights and indices; element indices transport through the
    // index-order bijection, which is the identity on indices
    return right_.left().make_vertex(v.height, v.address);
}

HVertex RelabelIso::map(const HVertex& v) const {
    left_.validate(v);
    HVertex out{map_tree(v.x), map_tree(v.y)};
    right_.validate(out);
    return out;
}

namespace {

// Joint color refinement over both graphs. Returns per-vertex colors; the
// two graphs share one color dictionary so classes are comparable.
struct Refinement {
    std::vector<int> color1, color2;
    bool classes_match = false;
};

Refinement refine_colors(const FiniteGraph& g1, int root1, const FiniteGraph& g2, int root2) {
    Refinement ref;
    int n = g1.vertex_count();
    ref.color1.assign(n, 0);
    ref.color2.assign(n, 0);
    ref.color1[root1] = 1;
    ref.color2[root2] = 1;
    int colors = 2;
    for (int round = 0; round < n; ++round) {
        std::map<std::pair<int, std::vector<int>>, int> dict;
        auto key_of = [&](const FiniteGraph& g, const std::vector<int>& color, int v) {
            std::vector<int> nb;
            nb.reserve(g.adj[v].size());
            for (int w : g.adj[v]) nb.push_back(color[w]);
            std::sort(nb.begin(), nb.end());
            return std::make_pair(color[v], std::move(nb));
        };
        std::vector<int> next1(n), next2(n);
        for (int v = 0; v < n; ++v) {
            auto [it, ignored] = dict.emplace(key_of(g1, ref.color1, v),
                                              static_cast<int>(dict.size()));
            next1[v] = it->second;
        }
        for (int v = 0; v < n; ++v) {
            auto [it, ignored] = dict.emplace(key_of(g2, ref.color2, v),
                                              static_cast<int>(dict.size()));
            next2[v] = it->second;
        }
        int newColors = static_cast<int>(dict.size());
        ref.color1.swap(next1);
        ref.color2.swap(next2);
        if (newColors == colors) break;
        colors = newColors;
    }
    std::vector<int> hist1(2 * n + 2, 0), hist2(2 * n + 2, 0);
    for (int c : ref.color1) ++hist1[c];
    for (int c : ref.color2) ++hist2[c];
    ref.classes_match = hist1 == hist2;
    return ref;
}

} // namespace

bool ball_isomorphic(const FiniteGraph& g1, int root1, const FiniteGraph& g2, int root2,
                     long long budget) {
    int n = g1.vertex_count();
    if (n != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return false;
    if (n == 0) return true;
    Refinement ref = refine_colors(g1, root1, g2, root2);
    if (!ref.classes_match) return false;

    // match in BFS order from the root so nearly every vertex has a mapped
    // neighbor constraining its candidates; extra components (arbitrary
    // graphs, not just balls) are appended as further BFS trees
    std::vector<int> order;
    order.reserve(n);
    {
        std::vector<char> seen(n, 0);
        std::deque<int> queue;
        auto enqueue = [&](int s) {
            if (!seen[s]) {
                seen[s] = 1;
                queue.push_back(s);
            }
        };
        enqueue(root1);
        int scan = 0;
        while (static_cast<int>(order.size()) < n) {
            if (queue.empty()) {
                while (seen[scan]) ++scan;
                enqueue(scan);
            }
            int u = queue.front();
            queue.pop_front();
            order.push_back(u);
            for (int w : g1.adj[u]) enqueue(w);
        }
    }

    std::vector<std::vector<int>> byColor2(2 * n);
    for (int v = 0; v < n; ++v) byColor2[ref.color2[v]].push_back(v);

    std::vector<int> image(n, -1), preimage(n, -1);
    long long nodes = 0;

    auto consistent = [&](int u, int w) {
        if (ref.color1[u] != ref.color2[w]) return false;
        // every mapped neighbor of u must map onto a neighbor of w, and w may
        // not touch any other mapped vertex
        int mappedAroundU = 0;
        for (int nb : g1.adj[u]) {
            if (image[nb] == -1) continue;
            ++mappedAroundU;
            if (!g2.adjacent(w, image[nb])) return false;
        }
        int mappedAroundW = 0;
        for (int nb : g2.adj[w])
            if (preimage[nb] != -1) ++mappedAroundW;
        return mappedAroundU == mappedAroundW;
    };

    auto dfs = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == order.size()) return true;
        int u = order[pos];
        for (int w : byColor2[ref.color1[u]]) {
            if (preimage[w] != -1) continue;
            if (++nodes > budget)
                throw CapacityError("isomorphism search exceeded its node budget");
            if (!consistent(u, w)) continue;
            image[u] = w;
            preimage[w] = u;
            if (self(self, pos + 1)) return true;
            image[u] = -1;
            preimage[w] = -1;
        }
        return false;
    };
    return dfs(dfs, 0);
}

QIReport orbit_qi_report(const Lamplighter& lamp, int radius,
                         std::span<const Rational> k_grid, std::size_t capacity) {
    auto gens = lamp.edge_generators();
    Ball<LampElement> words = lamp.cayley_ball(gens, radius, capacity);
    std::vector<HVertex> images;
    images.reserve(words.vertices.size());
    for (const auto& w : words.vertices) images.push_back(lamp.act(w, lamp.dl().base()));
    std::vector<long long> dh = lamp.dl().distances_to(lamp.dl().base(), images, capacity);
    std::vector<DistancePair> pairs(words.vertices.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        pairs[i] = DistancePair{words.depth[i], dh[i]};
    QIReport report = fit_qi(pairs, k_grid);
    report.domain = "cayley(" + lamp.group().name() + " wr Z, edge generators, r=" +
                    std::to_string(radius) + ")";
    report.codomain = "DL(" + std::to_string(lamp.group().order()) + "," +
                      std::to_string(lamp.group().order()) + ")";
    // coarse density over the half-radius codomain ball
    Ball<HVertex> sample = lamp.dl().ball(lamp.dl().base(), radius / 2, capacity);
    std::unordered_set<HVertex> imageSet(images.begin(), images.end());
    std::vector<int> hit;
    for (int v = 0; v < sample.graph.vertex_count(); ++v)
        if (imageSet.contains(sample.vertices[v])) hit.push_back(v);
    if (hit.empty()) {
        report.density = -1;
    } else {
        auto dist = bfs_distances(sample.graph, hit);
        long long d = 0;
        for (int v = 0; v < sample.graph.vertex_count(); ++v)
            d = std::max(d, static_cast<long long>(dist[v]));
        report.density = d;
    }
    return report;
}

std::string CollapseReport::to_json() const {
    nlohmann::json j;
    j["qi"] = nlohmann::json::parse(qi.to_json());
    j["max_defect"] = rational_to_string(max_defect);
    j["hausdorff"] = hausdorff_distance;
    j["corrected"] = corrected;
    j["tree_radius"] = tree_radius;
    j["h_radius"] = h_radius;
    return j.dump();
}

CollapseReport collapse_experiment(GroupPtr group, int k, int tree_radius, int h_radius,
                                   std::span<const Rational> k_grid, std::size_t capacity,
                                   std::uint64_t seed) {
    CollapseMap cm(std::move(group), k);
    CollapseReport out;
    out.tree_radius = tree_radius;
    out.h_radius = h_radius;

    Ball<TreeVertex> ball = cm.source_tree().ball(cm.source_tree().root(), tree_radius, capacity);
    std::size_t n = ball.vertices.size();
    std::vector<TreeVertex> collapsed(n);
    for (std::size_t i = 0; i < n; ++i) collapsed[i] = cm.apply(ball.vertices[i]);

    const Tree& src = cm.source_tree();
    const Tree& dst = cm.target_tree();
    // all pairs up to 2000 vertices, a fixed-size uniform sample above
    std::vector<std::pair<std::size_t, std::size_t>> chosen;
    if (n <= 2000) {
        chosen.reserve(n * (n - 1) / 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) chosen.emplace_back(i, j);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        chosen.reserve(100000);
        while (chosen.size() < 100000) {
            std::size_t i = pick(rng), j = pick(rng);
            if (i != j) chosen.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    std::vector<DistancePair> pairs(std::max<std::size_t>(chosen.size(), 1));
    parallel_for(chosen.size(), [&](std::size_t idx) {
        auto [i, j] = chosen[idx];
        pairs[idx] = DistancePair{src.distance(ball.vertices[i], ball.vertices[j]),
                                  dst.distance(collapsed[i], collapsed[j])};
    });

    std::vector<Rational> grid(k_grid.begin(), k_grid.end());
    grid.emplace_back(k);
    out.qi = fit_qi(pairs, grid);
    out.qi.domain = "tree(" + cm.source_tree().group().name() + ") ball r=" +
                    std::to_string(tree_radius);
    out.qi.codomain = "tree(" + cm.target_tree().group().name() + ")";

    Rational worst(0);
    for (const auto& p : pairs)
        worst = std::max(worst, boost::abs(Rational(p.image) - Rational(p.source, k)));
    out.max_defect = worst;

    Ball<HVertex> hball = cm.source_dl().ball(cm.source_dl().base(), h_radius, capacity);
    std::vector<HVertex> image;
    image.reserve(hball.vertices.size());
    std::unordered_set<HVertex> seen;
    for (const auto& v : hball.vertices) {
        auto img = cm.apply_h(v);
        if (img.corrected) ++out.corrected;
        if (seen.insert(img.vertex).second) image.push_back(img.vertex);
    }
    Ball<HVertex> target = cm.target_dl().ball(cm.target_dl().base(), h_radius / k, capacity);
    out.hausdorff_distance = hausdorff_h(cm.target_dl(), image, target.vertices, capacity);
    return out;
}

} // namespace dlgeo

#include <doctest.h>

#include <algorithm>
#include <set>
#include <unordered_set>

#include "dlgeo/lamplighter.hpp"
#include "dlgeo/sampling.hpp"

using namespace dlgeo;

namespace {

// Full brute-force window enumeration, used to validate the constraint-based
// stabilizer search on small windows.
std::vector<LampElement> brute_stabilizer(const Lamplighter& lamp, const HVertex& v,
                                          int window) {
    const GroupPtr& g = lamp.group_ptr();
    int q = g->order();
    int positions = 2 * window + 1;
    long long total = 1;
    for (int i = 0; i < positions; ++i) total *= q;
    std::vector<LampElement> out;
    for (int m = -window; m <= window; ++m) {
        for (long long code = 0; code < total; ++code) {
            long long c = code;
            CoeffVec cfg;
            for (int i = -window; i <= window; ++i) {
                int e = static_cast<int>(c % q);
                c /= q;
                if (e != FiniteGroup::kIdentity) cfg.emplace_back(i, e);
            }
            LampElement u{GroupLaurent(g, std::move(cfg)), m};
            if (lamp.act(u, v) == v) out.push_back(std::move(u));
        }
    }
    std::sort(out.begin(), out.end(), lamp_less);
    return out;
}

} // namespace

TEST_SUITE("lamplighter") {

TEST_CASE("group law") {
    Lamplighter lamp(make_cyclic(2));
    LampElement e = lamp.identity();
    LampElement shift1{GroupLaurent(lamp.group_ptr()), 1};
    LampElement lamp0{GroupLaurent(lamp.group_ptr(), {{0, 1}}), 0};

    CHECK(lamp.mul(e, lamp0) == lamp0);
    CHECK(lamp.mul(lamp0, e) == lamp0);
    // the shift drags the configuration: (0,1)*({0:g},0) = ({-1:g},1)
    CHECK(lamp.mul(shift1, lamp0) ==
          LampElement{GroupLaurent(lamp.group_ptr(), {{-1, 1}}), 1});

    Lamplighter lamp3(make_cyclic(3));
    Sampler rng(43);
    for (int t = 0; t < 10000; ++t) {
        LampElement a = rng.lamp(lamp3, 3);
        LampElement b = rng.lamp(lamp3, 3);
        LampElement c = rng.lamp(lamp3, 3);
        CHECK(lamp3.mul(lamp3.mul(a, b), c) == lamp3.mul(a, lamp3.mul(b, c)));
    }
}

TEST_CASE("inverses") {
    Lamplighter lamp(make_cyclic(3));
    CHECK(lamp.inv(lamp.identity()) == lamp.identity());
    CHECK(lamp.inv(LampElement{GroupLaurent(lamp.group_ptr()), 5}) ==
          LampElement{GroupLaurent(lamp.group_ptr()), -5});
    Sampler rng(47);
    for (int t = 0; t < 10000; ++t) {
        LampElement a = rng.lamp(lamp, 3);
        CHECK(lamp.mul(lamp.inv(a), a) == lamp.identity());
        CHECK(lamp.mul(a, lamp.inv(a)) == lamp.identity());
    }
}

TEST_CASE("sigma is a configuration-reversing involutive automorphism") {
    Lamplighter lamp(make_cyclic(3));
    CHECK(lamp.sigma(lamp.identity()) == lamp.identity());
    CHECK(lamp.sigma(LampElement{GroupLaurent(lamp.group_ptr(), {{2, 1}}), 3}) ==
          LampElement{GroupLaurent(lamp.group_ptr(), {{-2, 1}}), -3});
    Sampler rng(53);
    for (int t = 0; t < 10000; ++t) {
        LampElement a = rng.lamp(lamp, 3);
        LampElement b = rng.lamp(lamp, 3);
        CHECK(lamp.sigma(lamp.mul(a, b)) == lamp.mul(lamp.sigma(a), lamp.sigma(b)));
        CHECK(lamp.sigma(lamp.sigma(a)) == a);
    }
}

TEST_CASE("action on the horosphere") {
    Lamplighter lamp(make_cyclic(2));
    const DLGraph& dl = lamp.dl();
    HVertex base = dl.base();
    CHECK(lamp.act(lamp.identity(), base) == base);

    // a pure shift slides the base along both axes
    CHECK(lamp.act(LampElement{GroupLaurent(lamp.group_ptr()), 1}, base) ==
          (HVertex{TreeVertex{1, {}}, TreeVertex{-1, {}}}));

    // the lamp at index 0 is invisible from the base vertex
    CHECK(lamp.act(LampElement{GroupLaurent(lamp.group_ptr(), {{0, 1}}), 0}, base) == base);

    Sampler rng(59);
    for (int t = 0; t < 500; ++t) {
        LampElement u = rng.lamp(lamp, 3);
        LampElement v = rng.lamp(lamp, 3);
        HVertex p = rng.h_vertex(dl, 3, 3);
        HVertex up = lamp.act(u, p);
        CHECK(up.x.height + up.y.height == 0);
        CHECK(up.x.height == p.x.height + u.shift);
        CHECK(lamp.act(lamp.mul(u, v), p) == lamp.act(u, lamp.act(v, p)));
    }
}

TEST_CASE("action preserves adjacency on balls") {
    Lamplighter lamp(make_cyclic(2));
    const DLGraph& dl = lamp.dl();
    Ball<HVertex> ball = dl.ball(dl.base(), 4);
    Sampler rng(61);
    for (int t = 0; t < 10; ++t) {
        LampElement u = rng.lamp(lamp, 2);
        for (int a = 0; a < ball.graph.vertex_count(); ++a) {
            HVertex ua = lamp.act(u, ball.vertices[a]);
            for (int b : ball.graph.adj[a]) {
                if (b < a) continue;
                HVertex ub = lamp.act(u, ball.vertices[b]);
                auto nb = dl.neighbors(ua);
                CHECK(std::find(nb.begin(), nb.end(), ub) != nb.end());
            }
        }
    }
}

TEST_CASE("stabilizer: constraint search equals brute force on small windows") {
    Lamplighter lamp(make_cyclic(2));
    HVertex base = lamp.dl().base();
    auto fast = lamp.stabilizer(base, 2);
    auto slow = brute_stabilizer(lamp, base, 2);
    CHECK(fast == slow);

    Sampler rng(67);
    for (int t = 0; t < 5; ++t) {
        HVertex v = rng.h_vertex(lamp.dl(), 1, 2);
        CHECK(lamp.stabilizer(v, 2) == brute_stabilizer(lamp, v, 2));
    }
}

TEST_CASE("stabilizer of any vertex has exactly |G| elements in the window") {
    for (int q : {2, 3}) {
        Lamplighter lamp(make_cyclic(q));
        HVertex base = lamp.dl().base();
        auto stab = lamp.stabilizer(base, 4);
        CHECK(stab.size() == static_cast<std::size_t>(q));
        CHECK(std::find(stab.begin(), stab.end(), lamp.identity()) != stab.end());
        // closure: the stabilizer is a subgroup
        for (const auto& a : stab)
            for (const auto& b : stab) {
                LampElement ab = lamp.mul(a, b);
                CHECK(std::find(stab.begin(), stab.end(), ab) != stab.end());
            }
        // the free coefficient sits at index -height
        Sampler rng(71 + q);
        HVertex v = rng.h_vertex(lamp.dl(), 2, 2);
        auto stabV = lamp.stabilizer(v, 4);
        CHECK(stabV.size() == static_cast<std::size_t>(q));
        for (const auto& u : stabV)
            if (!u.cfg.is_identity()) {
                CHECK(u.cfg.coeffs().size() == 1);
                CHECK(u.cfg.min_index() == -v.x.height);
            }
    }
}

TEST_CASE("orbit covers every ball vertex with in-window witnesses") {
    Lamplighter lamp(make_cyclic(2));
    const DLGraph& dl = lamp.dl();

    OrbitCover trivial = lamp.orbit_covers(dl.ball(dl.base(), 0), 1);
    CHECK(trivial.covered);
    CHECK(trivial.witness[0].value() == lamp.identity());

    Ball<HVertex> ball = dl.ball(dl.base(), 3);
    OrbitCover cover = lamp.orbit_covers(ball, 6);
    CHECK(cover.covered);
    for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
        REQUIRE(cover.witness[i].has_value());
        CHECK(lamp.act(*cover.witness[i], dl.base()) == ball.vertices[i]);
    }

    // a one-step window cannot reach the radius-3 sphere
    OrbitCover tight = lamp.orbit_covers(ball, 1);
    CHECK_FALSE(tight.covered);
    CHECK(!tight.uncovered.empty());
}

TEST_CASE("edge generators") {
    for (int q : {2, 3}) {
        Lamplighter lamp(make_cyclic(q));
        auto gens = lamp.edge_generators();
        // 2q neighbor witnesses plus 2(q-1) inverses of the lamp-carrying ones
        CHECK(gens.size() == static_cast<std::size_t>(4 * q - 2));
        // S = S^{-1}
        for (const auto& s : gens) {
            LampElement si = lamp.inv(s);
            CHECK(std::find(gens.begin(), gens.end(), si) != gens.end());
            CHECK(std::abs(s.shift) == 1);
        }
        // the orbit of the base under S is exactly its neighbor set
        std::set<std::string> moved;
        for (const auto& s : gens) moved.insert(lamp.act(s, lamp.dl().base()).to_string());
        std::set<std::string> nbs;
        for (const auto& w : lamp.dl().neighbors(lamp.dl().base())) nbs.insert(w.to_string());
        CHECK(moved == nbs);
    }
}

TEST_CASE("cayley balls and word lengths") {
    Lamplighter lamp(make_cyclic(2));
    auto gens = lamp.edge_generators();
    Ball<LampElement> b1 = lamp.cayley_ball(gens, 1);
    CHECK(b1.graph.vertex_count() == 7); // identity plus 6 distinct generators

    Ball<LampElement> b6 = lamp.cayley_ball(gens, 6);
    // ball sizes are strictly increasing while the group keeps growing
    for (std::size_t r = 1; r < b6.layer_sizes.size(); ++r) CHECK(b6.layer_sizes[r] > 0);

    // BFS oracle: the word length of the lamp at the origin
    LampElement lamp0{GroupLaurent(lamp.group_ptr(), {{0, 1}}), 0};
    int id = b6.find(lamp0);
    REQUIRE(id >= 0);
    CHECK(b6.depth[id] == 2);

    CHECK_THROWS_AS(lamp.cayley_ball(std::vector<LampElement>{lamp.identity()}, 1),
                    InvalidInputError);
}

TEST_CASE("text form") {
    Lamplighter lamp(make_cyclic(3));
    LampElement u{GroupLaurent(lamp.group_ptr(), {{0, 1}, {5, 2}}), -3};
    CHECK(u.to_string() == "({0:1, 5:2} | -3)");
    CHECK(parse_lamp(u.to_string(), lamp) == u);
    CHECK(parse_lamp("({} | 0)", lamp) == lamp.identity());
    CHECK_THROWS_AS(parse_lamp("{0:1}", lamp), InvalidInputError);
}

} // TEST_SUITE

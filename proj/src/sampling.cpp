#include "dlgeo/sampling.hpp"

namespace dlgeo {

long long Sampler::integer(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng_);
}

int Sampler::element(const FiniteGroup& g) {
    return static_cast<int>(integer(0, g.order() - 1));
}

GroupLaurent Sampler::series(const GroupPtr& g, int lo, int hi) {
    CoeffVec entries;
    for (int i = lo; i <= hi; ++i) {
        int e = element(*g);
        if (e != FiniteGroup::kIdentity) entries.emplace_back(i, e);
    }
    return GroupLaurent(g, std::move(entries));
}

TreeVertex Sampler::tree_vertex(const Tree& t, int hmin, int hmax, int depth) {
    int h = static_cast<int>(integer(hmin, hmax));
    CoeffVec address;
    for (int i = -h - depth; i <= -h - 1; ++i) {
        int e = element(t.group());
        if (e != FiniteGroup::kIdentity) address.emplace_back(i, e);
    }
    return t.make_vertex(h, std::move(address));
}

HVertex Sampler::h_vertex(const DLGraph& dl, int hmax, int depth) {
    int h = static_cast<int>(integer(-hmax, hmax));
    TreeVertex x = tree_vertex(dl.left(), h, h, depth);
    TreeVertex y = tree_vertex(dl.right(), -h, -h, depth);
    return HVertex{std::move(x), std::move(y)};
}

LampElement Sampler::lamp(const Lamplighter& l, int window) {
    GroupLaurent cfg = series(l.group_ptr(), -window, window);
    int m = static_cast<int>(integer(-window, window));
    return LampElement{std::move(cfg), m};
}

} // namespace dlgeo

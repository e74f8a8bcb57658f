#pragma once

#include <cstdint>
#include <random>

#include "dlgeo/lamplighter.hpp"

namespace dlgeo {

/// Seeded generators for random elements, vertices and lamp configurations.
/// The same seed and call sequence always produce the same values.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    long long integer(long long lo, long long hi); // inclusive

    int element(const FiniteGroup& g);

    /// Uniform coefficient (identity allowed) at every index of [lo, hi].
    GroupLaurent series(const GroupPtr& g, int lo, int hi);

    /// Height uniform in [hmin, hmax]; address entries drawn on the `depth`
    /// indices directly below the height cutoff.
    TreeVertex tree_vertex(const Tree& t, int hmin, int hmax, int depth);

    /// Left height uniform in [-hmax, hmax]; both addresses drawn as above.
    HVertex h_vertex(const DLGraph& dl, int hmax, int depth);

    /// Shift uniform in [-window, window]; configuration drawn on
    /// [-window, window].
    LampElement lamp(const Lamplighter& l, int window);

private:
    std::mt19937_64 rng_;
};

} // namespace dlgeo

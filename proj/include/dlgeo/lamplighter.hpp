#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlgeo/horosphere.hpp"

namespace dlgeo {

/// An element of the wreath product G wr Z, stored as a finite-support lamp
/// configuration (an element of G[t,t^-1]) and the lamplighter position.
struct LampElement {
    GroupLaurent cfg;
    int shift = 0;

    bool operator==(const LampElement&) const = default;

    /// `(cfg | m)`
    std::string to_string() const { return "(" + cfg.to_string() + " | " + std::to_string(shift) + ")"; }
};

/// Deterministic total order: shift, then support, used for canonical output.
bool lamp_less(const LampElement& a, const LampElement& b);

struct OrbitCover {
    bool covered = true;
    int window = 0;
    std::vector<std::optional<LampElement>> witness; // per ball vertex id
    std::vector<int> uncovered;                      // ids without an in-window witness
};

/// The wreath product G wr Z together with its action on the horosphere over
/// (G, G). The group law comes from the shift action on configurations, and
/// the horosphere action pairs each element with its image under the
/// configuration-reversing automorphism, one factor each.
class Lamplighter {
public:
    explicit Lamplighter(GroupPtr group);

    const FiniteGroup& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    const DLGraph& dl() const { return dl_; }

    LampElement identity() const { return LampElement{GroupLaurent(group_), 0}; }

    /// (a,n)(b,m) = (a * (n.b), n+m)
    LampElement mul(const LampElement& u, const LampElement& v) const;

    LampElement inv(const LampElement& u) const;

    /// The automorphism (sum g_i t^i, m) -> (sum g_i t^-i, -m).
    LampElement sigma(const LampElement& u) const;

    /// Left coordinate moves by (cfg, shift), right coordinate by sigma of
    /// it; heights keep summing to zero.
    HVertex act(const LampElement& u, const HVertex& v) const;

    /// All elements with support and shift inside [-window, window] fixing v.
    /// The shift is pinned by height equivariance and, once it is, the fixing
    /// condition is independent per coefficient index, so the window is swept
    /// index by index and the product set enumerated; every element returned
    /// is re-checked through the real action.
    std::vector<LampElement> stabilizer(const HVertex& v, int window,
                                        std::size_t capacity = kDefaultCapacity) const;

    /// The unique minimal-support element carrying the base vertex to v.
    /// Every other witness differs from it only at coefficient index -shift.
    LampElement solve_to_base(const HVertex& v) const;

    /// Does every ball vertex have a witness inside the window? Windowed
    /// exhaustive truth: witnesses for a fixed vertex all agree outside index
    /// -shift, so checking the minimal one settles the whole window.
    OrbitCover orbit_covers(const Ball<HVertex>& ball, int window) const;

    /// Generators carrying the base vertex onto its 2q neighbors: the least
    /// witness per neighbor (identity at the free coefficient), closed under
    /// inverses. The closure stays inside the neighbor set and is what makes
    /// the set generate the whole group; 4q-2 elements over a group of
    /// order q.
    std::vector<LampElement> edge_generators() const;

    /// Cayley ball of radius r at the identity, edges u ~ u*s (left-invariant
    /// word metric).
    Ball<LampElement> cayley_ball(std::span<const LampElement> generators, int radius,
                                  std::size_t capacity = kDefaultCapacity) const;

private:
    void require_mine(const LampElement& u, const char* op) const;

    GroupPtr group_;
    DLGraph dl_;
};

/// Parses `({i:g, ...} | m)`.
LampElement parse_lamp(const std::string& text, const Lamplighter& lamp);

} // namespace dlgeo

template <>
struct std::hash<dlgeo::LampElement> {
    std::size_t operator()(const dlgeo::LampElement& u) const {
        std::size_t h = std::hash<int>{}(u.shift);
        for (const auto& [i, e] : u.cfg.coeffs())
            h = dlgeo::hash_combine(h, dlgeo::hash_combine(std::hash<int>{}(i),
                                                           std::hash<int>{}(e)));
        return h;
    }
};

#include "dlgeo/lamplighter.hpp"

#include <algorithm>

namespace dlgeo {

bool lamp_less(const LampElement& a, const LampElement& b) {
    if (a.shift != b.shift) return a.shift < b.shift;
    return a.cfg.coeffs() < b.cfg.coeffs();
}

Lamplighter::Lamplighter(GroupPtr group) : group_(group), dl_(group, group) {
    if (!group_) throw InvalidInputError("lamplighter requires a coefficient group");
}

void Lamplighter::require_mine(const LampElement& u, const char* op) const {
    if (!same_group(u.cfg.group(), *group_))
        throw IncompatibleError(std::string(op) + ": element over " + u.cfg.group().name() +
                                " used with the lamplighter over " + group_->name());
}

LampElement Lamplighter::mul(const LampElement& u, const LampElement& v) const {
    require_mine(u, "mul");
    require_mine(v, "mul");
    return LampElement{lmul(u.cfg, shift_series(u.shift, v.cfg)), u.shift + v.shift};
}

LampElement Lamplighter::inv(const LampElement& u) const {
    require_mine(u, "inv");
    return LampElement{shift_series(-u.shift, linv(u.cfg)), -u.shift};
}

LampElement Lamplighter::sigma(const LampElement& u) const {
    require_mine(u, "sigma");
    return LampElement{reverse_series(u.cfg), -u.shift};
}

HVertex Lamplighter::act(const LampElement& u, const HVertex& v) const {
    require_mine(u, "act");
    LampElement s = sigma(u);
    return HVertex{dl_.left().act_affine(u.cfg, u.shift, v.x),
                   dl_.right().act_affine(s.cfg, s.shift, v.y)};
}

std::vector<LampElement> Lamplighter::stabilizer(const HVertex& v, int window,
                                                 std::size_t capacity) const {
    if (window < 0) throw InvalidInputError("stabilizer window must be nonnegative");
    dl_.validate(v);
    std::vector<LampElement> result;
    for (int m = -window; m <= window; ++m) {
        // the left height moves by m for every configuration
        if (act(LampElement{GroupLaurent(group_), m}, v).x.height != v.x.height) continue;
        std::vector<std::pair<int, std::vector<int>>> slots; // index -> allowed elements
        unsigned long long total = 1;
        bool feasible = true;
        for (int i = -window; i <= window && feasible; ++i) {
            std::vector<int> allowed;
            for (int g = 0; g < group_->order(); ++g) {
                CoeffVec c;
                if (g != FiniteGroup::kIdentity) c.emplace_back(i, g);
                if (act(LampElement{GroupLaurent(group_, std::move(c)), m}, v) == v)
                    allowed.push_back(g);
            }
            if (allowed.empty()) {
                feasible = false;
                break;
            }
            if (allowed.size() > 1 || allowed[0] != FiniteGroup::kIdentity) {
                total *= allowed.size();
                if (total > capacity)
                    throw CapacityError("stabilizer within window " + std::to_string(window) +
                                        " has more than " + std::to_string(capacity) +
                                        " elements");
                slots.emplace_back(i, std::move(allowed));
            }
        }
        if (!feasible) continue;
        // enumerate the product of the non-pinned slots, identity elsewhere
        std::vector<std::size_t> pick(slots.size(), 0);
        while (true) {
            CoeffVec c;
            for (std::size_t s = 0; s < slots.size(); ++s)
                if (slots[s].second[pick[s]] != FiniteGroup::kIdentity)
                    c.emplace_back(slots[s].first, slots[s].second[pick[s]]);
            LampElement u{GroupLaurent(group_, std::move(c)), m};
            if (!(act(u, v) == v))
                throw Error("internal: stabilizer candidate fails the action re-check");
            result.push_back(std::move(u));
            std::size_t s = 0;
            while (s < pick.size() && ++pick[s] == slots[s].second.size()) pick[s++] = 0;
            if (s == pick.size()) break;
        }
    }
    std::sort(result.begin(), result.end(), lamp_less);
    return result;
}

LampElement Lamplighter::solve_to_base(const HVertex& v) const {
    dl_.validate(v);
    int m = v.x.height;
    CoeffVec c;
    for (const auto& [i, g] : v.x.address) c.emplace_back(i, g);   // indices <= -m-1
    for (const auto& [j, g] : v.y.address) c.emplace_back(-j, g);  // indices >= 1-m
    LampElement u{GroupLaurent(group_, std::move(c)), m};
    if (!(act(u, dl_.base()) == v))
        throw Error("internal: orbit witness fails the action re-check");
    return u;
}

OrbitCover Lamplighter::orbit_covers(const Ball<HVertex>& ball, int window) const {
    OrbitCover out;
    out.window = window;
    out.witness.reserve(ball.vertices.size());
    for (std::size_t id = 0; id < ball.vertices.size(); ++id) {
        LampElement u = solve_to_base(ball.vertices[id]);
        bool inside = std::abs(u.shift) <= window &&
                      (u.cfg.is_identity() ||
                       (u.cfg.min_index() >= -window && u.cfg.max_index() <= window));
        if (!inside) {
            out.covered = false;
            out.uncovered.push_back(static_cast<int>(id));
            out.witness.emplace_back(std::nullopt);
        } else {
            out.witness.emplace_back(std::move(u));
        }
    }
    return out;
}

std::vector<LampElement> Lamplighter::edge_generators() const {
    // least witness per neighbor: every witness coset differs only at the
    // free coefficient index -shift, so the identity slot is lamp_less-least
    std::vector<LampElement> gens;
    for (const auto& nb : dl_.neighbors(dl_.base())) gens.push_back(solve_to_base(nb));
    // closing under inverses keeps the image inside the neighbor set (the
    // extra inverses land on the identity-labeled children) and makes the
    // set generate the whole group rather than a proper subgroup
    std::vector<LampElement> closure = gens;
    for (const auto& s : gens) {
        LampElement si = inv(s);
        if (std::find(closure.begin(), closure.end(), si) == closure.end())
            closure.push_back(std::move(si));
    }
    return closure;
}

Ball<LampElement> Lamplighter::cayley_ball(std::span<const LampElement> generators, int radius,
                                           std::size_t capacity) const {
    for (const auto& s : generators) {
        require_mine(s, "cayley_ball");
        if (s == identity()) throw InvalidInputError("generating set contains the identity");
    }
    return build_ball(identity(), radius,
                      [this, generators](const LampElement& u) {
                          std::vector<LampElement> out;
                          out.reserve(generators.size());
                          for (const auto& s : generators) out.push_back(mul(u, s));
                          return out;
                      },
                      capacity);
}

LampElement parse_lamp(const std::string& text, const Lamplighter& lamp) {
    std::string s = text;
    std::erase(s, ' ');
    if (s.size() < 5 || s.front() != '(' || s.back() != ')')
        throw InvalidInputError("lamp element text must look like ({...} | m): " + text);
    s = s.substr(1, s.size() - 2);
    auto bar = s.find('|');
    if (bar == std::string::npos || s.find('{') != 0)
        throw InvalidInputError("lamp element text must look like ({...} | m): " + text);
    GroupLaurent cfg = parse_series(s.substr(0, bar), lamp.group_ptr());
    int m = 0;
    try {
        m = std::stoi(s.substr(bar + 1));
    } catch (const std::exception&) {
        throw InvalidInputError("lamp element shift is not an integer: " + text);
    }
    return LampElement{std::move(cfg), m};
}

} // namespace dlgeo

#include "dlgeo/tree.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace dlgeo {

std::string TreeVertex::to_string() const {
    std::ostringstream os;
    os << "(" << height << " |";
    bool first = true;
    for (const auto& [i, e] : address) {
        os << (first ? " " : ", ") << i << ":" << e;
        first = false;
    }
    os << ")";
    return os.str();
}

Tree::Tree(GroupPtr group) : group_(std::move(group)) {
    if (!group_) throw InvalidInputError("tree requires a coefficient group");
}

void Tree::require_mine(const GroupLaurent& a, const char* op) const {
    if (!same_group(a.group(), *group_))
        throw IncompatibleError(std::string(op) + ": series over " + a.group().name() +
                                " applied to the tree over " + group_->name());
}

TreeVertex Tree::vertex_of(const GroupLaurent& a, int t) const {
    require_mine(a, "vertex_of");
    TreeVertex v;
    v.height = t;
    const CoeffVec& c = a.coeffs();
    auto end = std::lower_bound(c.begin(), c.end(), -t - 1 + 1,
                                [](const auto& e, int key) { return e.first < key; });
    v.address.assign(c.begin(), end);
    return v;
}

TreeVertex Tree::make_vertex(int height, CoeffVec address) const {
    canonicalize(address);
    for (const auto& [i, e] : address) {
        if (i > -height - 1)
            throw InvalidInputError("address index " + std::to_string(i) +
                                    " is not below height " + std::to_string(height));
        if (e < 0 || e >= group_->order())
            throw InvalidInputError("address entry is not a group element");
    }
    return TreeVertex{height, std::move(address)};
}

GroupLaurent Tree::representative(const TreeVertex& v) const {
    return GroupLaurent(group_, v.address);
}

TreeVertex Tree::parent(const TreeVertex& v) const {
    TreeVertex p = v;
    ++p.height;
    if (!p.address.empty() && p.address.back().first == -v.height - 1) p.address.pop_back();
    return p;
}

std::vector<TreeVertex> Tree::children(const TreeVertex& v) const {
    std::vector<TreeVertex> out;
    out.reserve(group_->order());
    for (int g = 0; g < group_->order(); ++g) {
        TreeVertex c = v;
        --c.height;
        if (g != FiniteGroup::kIdentity) c.address.emplace_back(-v.height, g);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<TreeVertex> Tree::neighbors(const TreeVertex& v) const {
    std::vector<TreeVertex> out;
    out.reserve(group_->order() + 1);
    out.push_back(parent(v));
    auto kids = children(v);
    out.insert(out.end(), std::make_move_iterator(kids.begin()),
               std::make_move_iterator(kids.end()));
    return out;
}

long long Tree::distance(const TreeVertex& u, const TreeVertex& v) const {
    TreeVertex a = u, b = v;
    long long steps = 0;
    while (!(a == b)) {
        if (a.height < b.height) {
            a = parent(a);
            ++steps;
        } else if (b.height < a.height) {
            b = parent(b);
            ++steps;
        } else {
            a = parent(a);
            b = parent(b);
            steps += 2;
        }
    }
    return steps;
}

TreeVertex Tree::act_series(const GroupLaurent& a, const TreeVertex& v) const {
    require_mine(a, "act_series");
    TreeVertex out;
    out.height = v.height;
    const CoeffVec& ac = a.coeffs();
    auto ia = ac.begin();
    auto ea = std::lower_bound(ac.begin(), ac.end(), -v.height - 1 + 1,
                               [](const auto& e, int key) { return e.first < key; });
    auto iv = v.address.begin(), ev = v.address.end();
    while (ia != ea || iv != ev) {
        if (iv == ev || (ia != ea && ia->first < iv->first)) {
            out.address.push_back(*ia++);
        } else if (ia == ea || iv->first < ia->first) {
            out.address.push_back(*iv++);
        } else {
            int prod = group_->mul(ia->second, iv->second);
            if (prod != FiniteGroup::kIdentity) out.address.emplace_back(ia->first, prod);
            ++ia;
            ++iv;
        }
    }
    return out;
}

TreeVertex Tree::act_shift(int n, const TreeVertex& v) const {
    TreeVertex out;
    out.height = v.height + n;
    out.address = v.address;
    for (auto& [i, e] : out.address) i -= n;
    return out;
}

TreeVertex Tree::act_affine(const GroupLaurent& a, int n, const TreeVertex& v) const {
    return act_series(a, act_shift(n, v));
}

long long Tree::projected_ball_size(int q, int r, long long cap) {
    if (r == 0) return 1;
    if (q == 1) return 2LL * r + 1;
    long long total = 1;
    long long layer = q + 1; // |S_1|
    for (int d = 1; d <= r; ++d) {
        total += layer;
        if (total > cap) return cap + 1;
        if (layer > cap / q + 1) return cap + 1;
        layer *= q;
    }
    return total;
}

Ball<TreeVertex> Tree::ball(const TreeVertex& center, int radius, std::size_t capacity) const {
    constexpr long long kCountable = std::numeric_limits<long long>::max() / 8;
    long long projected = projected_ball_size(branching(), radius, kCountable);
    if (projected > static_cast<long long>(capacity))
        throw CapacityError("tree ball of radius " + std::to_string(radius) +
                            " exceeds the capacity of " + std::to_string(capacity) +
                            " vertices (projected " +
                            (projected > kCountable ? std::string("more than ") +
                                                          std::to_string(kCountable)
                                                    : std::to_string(projected)) +
                            ")");
    return build_ball(center, radius, [this](const TreeVertex& v) { return neighbors(v); },
                      capacity);
}

TreeVertex parse_tree_vertex(const std::string& text, const Tree& tree) {
    std::string s = text;
    std::erase(s, ' ');
    if (s.size() < 3 || s.front() != '(' || s.back() != ')')
        throw InvalidInputError("vertex text must look like (h | i:g, ...): " + text);
    s = s.substr(1, s.size() - 2);
    auto bar = s.find('|');
    if (bar == std::string::npos)
        throw InvalidInputError("vertex text missing '|': " + text);
    int height = 0;
    try {
        height = std::stoi(s.substr(0, bar));
    } catch (const std::exception&) {
        throw InvalidInputError("vertex height is not an integer: " + text);
    }
    GroupLaurent addr = parse_series("{" + s.substr(bar + 1) + "}", tree.group_ptr());
    return tree.make_vertex(height, addr.coeffs());
}

} // namespace dlgeo

#include "dlgeo/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace dlgeo {

void canonicalize(CoeffVec& entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (entries[i - 1].first == entries[i].first)
            throw InvalidInputError("duplicate coefficient index " +
                                    std::to_string(entries[i].first));
    entries.erase(std::remove_if(entries.begin(), entries.end(),
                                 [](const auto& e) { return e.second == FiniteGroup::kIdentity; }),
                  entries.end());
}

GroupLaurent::GroupLaurent(GroupPtr g) : group_(std::move(g)) {
    if (!group_) throw InvalidInputError("series requires a group");
}

GroupLaurent::GroupLaurent(GroupPtr g, CoeffVec entries)
    : group_(std::move(g)), coeffs_(std::move(entries)) {
    if (!group_) throw InvalidInputError("series requires a group");
    canonicalize(coeffs_);
    for (const auto& [i, e] : coeffs_)
        if (e < 0 || e >= group_->order())
            throw InvalidInputError("coefficient at index " + std::to_string(i) +
                                    " is not an element of the group");
}

int GroupLaurent::coeff(int i) const {
    auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), i,
                               [](const auto& e, int key) { return e.first < key; });
    return (it != coeffs_.end() && it->first == i) ? it->second : FiniteGroup::kIdentity;
}

int GroupLaurent::min_index() const {
    if (coeffs_.empty()) throw Error("identity series has empty support");
    return coeffs_.front().first;
}

int GroupLaurent::max_index() const {
    if (coeffs_.empty()) throw Error("identity series has empty support");
    return coeffs_.back().first;
}

std::string GroupLaurent::to_string() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [i, e] : coeffs_) {
        if (!first) os << ", ";
        os << i << ":" << e;
        first = false;
    }
    os << "}";
    return os.str();
}

namespace {

void require_same_group(const GroupLaurent& a, const GroupLaurent& b, const char* op) {
    if (!same_group(a.group(), b.group()))
        throw IncompatibleError(std::string(op) + ": operands over different groups (" +
                                a.group().name() + " vs " + b.group().name() + ")");
}

} // namespace

GroupLaurent lmul(const GroupLaurent& a, const GroupLaurent& b) {
    require_same_group(a, b, "lmul");
    const FiniteGroup& g = a.group();
    CoeffVec out;
    out.reserve(a.coeffs().size() + b.coeffs().size());
    auto ia = a.coeffs().begin(), ea = a.coeffs().end();
    auto ib = b.coeffs().begin(), eb = b.coeffs().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->first < ib->first)) {
            out.push_back(*ia++);
        } else if (ia == ea || ib->first < ia->first) {
            out.push_back(*ib++);
        } else {
            int prod = g.mul(ia->second, ib->second);
            if (prod != FiniteGroup::kIdentity) out.emplace_back(ia->first, prod);
            ++ia;
            ++ib;
        }
    }
    return GroupLaurent(a.group_ptr(), std::move(out));
}

GroupLaurent linv(const GroupLaurent& a) {
    CoeffVec out = a.coeffs();
    for (auto& [i, e] : out) e = a.group().inverse(e);
    return GroupLaurent(a.group_ptr(), std::move(out));
}

Valuation valuation(const GroupLaurent& a) {
    return a.is_identity() ? Valuation::infinity() : Valuation::at(a.min_index());
}

Valuation ldist(const GroupLaurent& a, const GroupLaurent& b) {
    return valuation(lmul(linv(a), b));
}

GroupLaurent shift_series(int n, const GroupLaurent& a) {
    CoeffVec out = a.coeffs();
    for (auto& [i, e] : out) i -= n;
    return GroupLaurent(a.group_ptr(), std::move(out));
}

GroupLaurent reverse_series(const GroupLaurent& a) {
    CoeffVec out = a.coeffs();
    for (auto& [i, e] : out) i = -i;
    return GroupLaurent(a.group_ptr(), std::move(out));
}

GroupLaurent parse_series(const std::string& text, GroupPtr g) {
    std::string s = text;
    std::erase(s, ' ');
    if (s.size() < 2 || s.front() != '{' || s.back() != '}')
        throw InvalidInputError("series text must look like {i:g, ...}: " + text);
    s = s.substr(1, s.size() - 2);
    CoeffVec entries;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw InvalidInputError("series entry missing ':': " + item);
        try {
            entries.emplace_back(std::stoi(item.substr(0, colon)),
                                 std::stoi(item.substr(colon + 1)));
        } catch (const std::exception&) {
            throw InvalidInputError("series entry is not a pair of integers: " + item);
        }
    }
    return GroupLaurent(std::move(g), std::move(entries));
}

} // namespace dlgeo

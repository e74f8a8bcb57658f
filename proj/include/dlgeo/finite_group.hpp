#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dlgeo/errors.hpp"

namespace dlgeo {

/// A finite group given by its multiplication table.
///
/// Elements are the indices 0..order-1 and the identity is pinned at index 0,
/// so every enumeration that walks elements in index order is deterministic.
/// Instances are validated on construction and immutable afterwards; they can
/// be shared freely across threads.
class FiniteGroup {
public:
    static constexpr int kIdentity = 0;
    static constexpr int kMaxOrder = 4096;

    /// Z/qZ with addition mod q.
    static FiniteGroup cyclic(int q);

    /// Validates a q x q table over indices 0..q-1. Row/column 0 must act as
    /// the identity; inverses and associativity are checked (associativity
    /// exhaustively for small orders, by seeded sampling above that).
    static FiniteGroup from_table(const std::vector<std::vector<int>>& table);

    /// G^k with componentwise multiplication. Component tuples are encoded as
    /// index = sum comp[i] * q^i.
    static FiniteGroup direct_power(const FiniteGroup& g, int k);

    int order() const { return order_; }

    int mul(int a, int b) const {
        check_element(a);
        check_element(b);
        return table_[static_cast<std::size_t>(a) * order_ + b];
    }

    int inverse(int a) const {
        check_element(a);
        return inverses_[a];
    }

    bool is_abelian() const;

    static long long encode_power(const std::vector<int>& comps, int base_order);
    static std::vector<int> decode_power(long long index, int base_order, int k);

    /// Structural equality: same order and same table. The display name is
    /// not part of the value.
    bool operator==(const FiniteGroup& o) const {
        return order_ == o.order_ && table_ == o.table_;
    }

    const std::string& name() const { return name_; }

private:
    FiniteGroup(int order, std::vector<int> table, std::string name);

    void check_element(int a) const {
        if (a < 0 || a >= order_)
            throw InvalidInputError("element index " + std::to_string(a) +
                                    " out of range for group of order " +
                                    std::to_string(order_));
    }

    void validate();

    int order_;
    std::vector<int> table_; // row-major, table_[a*order_+b] = a*b
    std::vector<int> inverses_;
    std::string name_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr make_cyclic(int q) {
    return std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(q));
}

inline GroupPtr make_power(const FiniteGroup& g, int k) {
    return std::make_shared<const FiniteGroup>(FiniteGroup::direct_power(g, k));
}

/// True when the two operands may be combined: same object or equal tables.
inline bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
    return &a == &b || a == b;
}

/// Loads {"order": q, "table": [[...], ...]} and validates it.
FiniteGroup group_from_json_file(const std::string& path);

} // namespace dlgeo

#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dlgeo/finite_group.hpp"
#include "dlgeo/util.hpp"

namespace dlgeo {

/// Finite-support coefficient data: (index, element) pairs with ascending
/// indices and no identity entries. Shared by series and tree addresses.
using CoeffVec = std::vector<std::pair<int, int>>;

/// Sorts by index, rejects duplicate indices, strips identity entries.
void canonicalize(CoeffVec& entries);

/// The valuation of a series: the least support index N, or +infinity for
/// the identity series. All comparisons happen on this exact value; the real
/// norm e^(-N) is computed for display only. Larger valuation = smaller norm,
/// with +infinity corresponding to norm 0.
class Valuation {
public:
    static Valuation infinity() { return Valuation(false, 0); }
    static Valuation at(long long n) { return Valuation(true, n); }

    bool is_finite() const { return finite_; }

    long long value() const {
        if (!finite_) throw Error("valuation is infinite");
        return n_;
    }

    double display_norm() const { return finite_ ? std::exp(-static_cast<double>(n_)) : 0.0; }

    bool operator==(const Valuation&) const = default;

    /// +infinity compares greater than every finite valuation.
    std::strong_ordering operator<=>(const Valuation& o) const {
        if (finite_ != o.finite_)
            return finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
        if (!finite_) return std::strong_ordering::equal;
        return n_ <=> o.n_;
    }

    std::string to_string() const { return finite_ ? std::to_string(n_) : "inf"; }

private:
    Valuation(bool finite, long long n) : finite_(finite), n_(n) {}
    bool finite_;
    long long n_;
};

/// An element of G[t,t^-1]: a finite-support assignment of group elements to
/// integer indices. Stored in canonical form (no identity coefficients), so
/// structural equality is mathematical equality. Values are immutable.
class GroupLaurent {
public:
    /// The identity series over g.
    explicit GroupLaurent(GroupPtr g);

    /// Canonicalizes the entries; throws if an entry index repeats or an
    /// element index is out of range.
    GroupLaurent(GroupPtr g, CoeffVec entries);

    const FiniteGroup& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }

    /// Coefficient at index i; identity when absent.
    int coeff(int i) const;

    bool is_identity() const { return coeffs_.empty(); }
    const CoeffVec& coeffs() const { return coeffs_; }

    int min_index() const;
    int max_index() const;

    bool operator==(const GroupLaurent& o) const {
        return coeffs_ == o.coeffs_ &&
               (group_ == o.group_ || *group_ == *o.group_);
    }

    /// `{i:g, j:h, ...}` with ascending indices; the identity prints as `{}`.
    std::string to_string() const;

private:
    GroupPtr group_;
    CoeffVec coeffs_;
};

/// Componentwise product. Throws IncompatibleError on group mismatch.
GroupLaurent lmul(const GroupLaurent& a, const GroupLaurent& b);

/// Coefficientwise inverse.
GroupLaurent linv(const GroupLaurent& a);

/// Least support index, +infinity for the identity series.
Valuation valuation(const GroupLaurent& a);

/// Distance valuation of a and b: valuation(a^-1 b). Symmetric.
Valuation ldist(const GroupLaurent& a, const GroupLaurent& b);

/// n . sum g_i t^i = sum g_i t^(i-n): coefficient at i-n is the old one at i.
GroupLaurent shift_series(int n, const GroupLaurent& a);

/// Coefficient at -i is the old one at i. An involution.
GroupLaurent reverse_series(const GroupLaurent& a);

/// Parses the `{i:g, ...}` text form over the given group.
GroupLaurent parse_series(const std::string& text, GroupPtr g);

} // namespace dlgeo

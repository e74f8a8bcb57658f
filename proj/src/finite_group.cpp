#include "dlgeo/finite_group.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace dlgeo {

namespace {

std::string triple_witness(int a, int b, int c) {
    std::ostringstream os;
    os << "(" << a << "," << b << "," << c << ")";
    return os.str();
}

} // namespace

FiniteGroup::FiniteGroup(int order, std::vector<int> table, std::string name)
    : order_(order), table_(std::move(table)), name_(std::move(name)) {
    validate();
}

FiniteGroup FiniteGroup::cyclic(int q) {
    if (q < 1) throw InvalidInputError("cyclic group order must be >= 1, got " + std::to_string(q));
    if (q > kMaxOrder)
        throw CapacityError("cyclic group order " + std::to_string(q) + " exceeds the limit " +
                            std::to_string(kMaxOrder));
    std::vector<int> table(static_cast<std::size_t>(q) * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) table[static_cast<std::size_t>(a) * q + b] = (a + b) % q;
    return FiniteGroup(q, std::move(table), "cyclic:" + std::to_string(q));
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& table) {
    int q = static_cast<int>(table.size());
    if (q < 1) throw InvalidInputError("group table must be nonempty");
    if (q > kMaxOrder)
        throw CapacityError("group order " + std::to_string(q) + " exceeds the limit " +
                            std::to_string(kMaxOrder));
    std::vector<int> flat(static_cast<std::size_t>(q) * q);
    for (int a = 0; a < q; ++a) {
        if (static_cast<int>(table[a].size()) != q)
            throw InvalidInputError("group table row " + std::to_string(a) + " has length " +
                                    std::to_string(table[a].size()) + ", expected " +
                                    std::to_string(q));
        for (int b = 0; b < q; ++b) {
            int v = table[a][b];
            if (v < 0 || v >= q)
                throw NotAGroupError("table entry (" + std::to_string(a) + "," +
                                     std::to_string(b) + ") = " + std::to_string(v) +
                                     " is not an element index");
            flat[static_cast<std::size_t>(a) * q + b] = v;
        }
    }
    return FiniteGroup(q, std::move(flat), "table:" + std::to_string(q));
}

FiniteGroup FiniteGroup::direct_power(const FiniteGroup& g, int k) {
    if (k < 1) throw InvalidInputError("direct power exponent must be >= 1, got " + std::to_string(k));
    int q = g.order();
    long long big = 1;
    for (int i = 0; i < k; ++i) {
        big *= q;
        if (big > kMaxOrder)
            throw CapacityError("direct power order " + std::to_string(q) + "^" +
                                std::to_string(k) + " exceeds the index limit " +
                                std::to_string(kMaxOrder));
    }
    int order = static_cast<int>(big);
    std::vector<int> table(static_cast<std::size_t>(order) * order);
    std::vector<int> da(k), db(k), dc(k);
    for (int a = 0; a < order; ++a) {
        da = decode_power(a, q, k);
        for (int b = 0; b < order; ++b) {
            db = decode_power(b, q, k);
            for (int i = 0; i < k; ++i) dc[i] = g.mul(da[i], db[i]);
            table[static_cast<std::size_t>(a) * order + b] =
                static_cast<int>(encode_power(dc, q));
        }
    }
    return FiniteGroup(order, std::move(table), g.name() + "^" + std::to_string(k));
}

long long FiniteGroup::encode_power(const std::vector<int>& comps, int base_order) {
    long long idx = 0;
    long long place = 1;
    for (int c : comps) {
        idx += c * place;
        place *= base_order;
    }
    return idx;
}

std::vector<int> FiniteGroup::decode_power(long long index, int base_order, int k) {
    std::vector<int> comps(k);
    for (int i = 0; i < k; ++i) {
        comps[i] = static_cast<int>(index % base_order);
        index /= base_order;
    }
    return comps;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order_; ++a)
        for (int b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

void FiniteGroup::validate() {
    int q = order_;
    for (int b = 0; b < q; ++b)
        if (table_[b] != b)
            throw NotAGroupError("identity axiom violated: 0*" + std::to_string(b) + " = " +
                                 std::to_string(table_[b]) + ", witness " +
                                 triple_witness(0, b, b));
    for (int a = 0; a < q; ++a)
        if (table_[static_cast<std::size_t>(a) * q] != a)
            throw NotAGroupError("identity axiom violated: " + std::to_string(a) + "*0 = " +
                                 std::to_string(table_[static_cast<std::size_t>(a) * q]) +
                                 ", witness " + triple_witness(a, 0, a));

    inverses_.assign(q, -1);
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            if (table_[static_cast<std::size_t>(a) * q + b] == kIdentity &&
                table_[static_cast<std::size_t>(b) * q + a] == kIdentity) {
                inverses_[a] = b;
                break;
            }
        }
        if (inverses_[a] < 0)
            throw NotAGroupError("inverse axiom violated: no two-sided inverse for element " +
                                 std::to_string(a));
    }

    auto assoc = [&](int a, int b, int c) {
        int ab = table_[static_cast<std::size_t>(a) * q + b];
        int bc = table_[static_cast<std::size_t>(b) * q + c];
        return table_[static_cast<std::size_t>(ab) * q + c] ==
               table_[static_cast<std::size_t>(a) * q + bc];
    };
    if (q <= 64) {
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                for (int c = 0; c < q; ++c)
                    if (!assoc(a, b, c))
                        throw NotAGroupError("associativity violated, witness " +
                                             triple_witness(a, b, c));
    } else {
        std::mt19937_64 rng(0x5eed5eedULL);
        std::uniform_int_distribution<int> pick(0, q - 1);
        for (int t = 0; t < 200000; ++t) {
            int a = pick(rng), b = pick(rng), c = pick(rng);
            if (!assoc(a, b, c))
                throw NotAGroupError("associativity violated, witness " + triple_witness(a, b, c));
        }
    }
}

FiniteGroup group_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open group file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError("malformed JSON in " + path + ": " + e.what());
    }
    if (!j.contains("order") || !j.contains("table"))
        throw InvalidInputError("group file must contain \"order\" and \"table\": " + path);
    int q = j.at("order").get<int>();
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(table.size()) != q)
        throw InvalidInputError("group file order disagrees with table size: " + path);
    return FiniteGroup::from_table(table);
}

} // namespace dlgeo

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"

namespace grpmetric {

/**
 * A finite group with elements encoded as 0..order-1 and a stored Cayley table.
 *
 * Encodings:
 *  - cyclic(m):     residues 0..m-1
 *  - product(...):  mixed radix over the factor encodings, leftmost factor most significant
 *  - dihedral(k):   r^a s^b  <->  a + k*b   (order 2k, s r = r^-1 s)
 *  - quaternion(N): x^a y^b  <->  a + (N/2)*b (x of order N/2, y^2 = x^(N/4), y^-1 x y = x^-1)
 *  - tabulated:     as given; the identity may sit at any index
 *
 * Copies share the immutable table, so passing groups by value is cheap.
 */
class FiniteGroup {
public:
    enum class Family { cyclic, product, dihedral, quaternion, tabulated };

    static FiniteGroup cyclic(std::uint32_t m);
    static FiniteGroup product(std::vector<FiniteGroup> factors);
    static FiniteGroup power(const FiniteGroup& base, std::size_t k);
    static FiniteGroup dihedral(std::uint32_t k);
    static FiniteGroup quaternion(std::uint32_t order);
    /// Rows are left operands: table[a][b] = a*b. Axioms are verified.
    static FiniteGroup tabulated(const std::vector<std::vector<Element>>& table, std::string name = {});

    std::size_t order() const;
    Element identity() const;
    Element op(Element a, Element b) const;
    Element inverse(Element a) const;
    /// a * b^-1, the group "difference" used by all right-invariant metrics.
    Element difference(Element a, Element b) const { return op(a, inverse(b)); }
    Element pow(Element a, std::uint64_t k) const;

    Family family() const;
    const std::string& name() const;
    /// Family parameter: m for cyclic, k for dihedral, the order for quaternion.
    std::uint32_t parameter() const;
    const std::vector<FiniteGroup>& factors() const;
    bool is_cyclic_family() const { return family() == Family::cyclic; }
    bool is_abelian() const;

    /// Factor coordinates of a product element.
    std::vector<Element> coordinates(Element x) const;
    Element from_coordinates(std::span<const Element> coords) const;
    std::string label(Element x) const;

    bool valid(Element x) const { return x < order(); }
    void require_element(Element x) const {
        if (!valid(x)) {
            throw std::out_of_range("element " + std::to_string(x) + " is not in " + name() + " (order " +
                                    std::to_string(order()) + ")");
        }
    }

    /// Same order, identity and multiplication table.
    bool same_table(const FiniteGroup& other) const;

private:
    struct Data;
    explicit FiniteGroup(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    static FiniteGroup finish(Data d);
    std::shared_ptr<const Data> data_;
};

struct FiniteGroup::Data {
    Family family = Family::tabulated;
    std::string name;
    std::size_t order = 0;
    Element identity = 0;
    std::uint32_t parameter = 0;
    std::vector<FiniteGroup> factors;
    std::vector<std::size_t> strides;
    std::vector<Element> table;
    std::vector<Element> inverse;
};

inline std::size_t FiniteGroup::order() const { return data_->order; }
inline Element FiniteGroup::identity() const { return data_->identity; }
inline Element FiniteGroup::op(Element a, Element b) const { return data_->table[std::size_t(a) * data_->order + b]; }
inline Element FiniteGroup::inverse(Element a) const { return data_->inverse[a]; }
inline FiniteGroup::Family FiniteGroup::family() const { return data_->family; }
inline const std::string& FiniteGroup::name() const { return data_->name; }
inline std::uint32_t FiniteGroup::parameter() const { return data_->parameter; }
inline const std::vector<FiniteGroup>& FiniteGroup::factors() const { return data_->factors; }
inline bool FiniteGroup::same_table(const FiniteGroup& other) const {
    return data_ == other.data_ ||
           (order() == other.order() && identity() == other.identity() && data_->table == other.data_->table);
}

namespace detail {

/// Checks closure, identity, inverses and associativity. Associativity is exhaustive up to
/// order 512 and sampled with a fixed seed above. Returns the failure, if any.
inline std::optional<std::string> check_group_table(std::size_t n, const std::vector<Element>& t,
                                                    Element& identity_out) {
    if (n == 0) return "empty group";
    if (t.size() != n * n) return "table is not square";
    for (Element v : t) {
        if (v >= n) return "table entry " + std::to_string(v) + " out of range";
    }
    auto at = [&](std::size_t a, std::size_t b) { return t[a * n + b]; };
    std::optional<Element> identity;
    for (std::size_t e = 0; e < n && !identity; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x) ok = at(e, x) == x && at(x, e) == x;
        if (ok) identity = static_cast<Element>(e);
    }
    if (!identity) return "no two-sided identity";
    for (std::size_t x = 0; x < n; ++x) {
        bool found = false;
        for (std::size_t y = 0; y < n && !found; ++y) found = at(x, y) == *identity && at(y, x) == *identity;
        if (!found) return "element " + std::to_string(x) + " has no inverse";
    }
    auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) { return at(at(a, b), c) == at(a, at(b, c)); };
    if (n <= 512) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const std::size_t ab = at(a, b);
                for (std::size_t c = 0; c < n; ++c) {
                    if (t[ab * n + c] != at(a, at(b, c))) {
                        return "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                               std::to_string(c) + ")";
                    }
                }
            }
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (int i = 0; i < (1 << 20); ++i) {
            const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
            if (!assoc(a, b, c)) return "associativity fails (sampled)";
        }
    }
    identity_out = *identity;
    return std::nullopt;
}

}  // namespace detail

inline FiniteGroup FiniteGroup::finish(Data d) {
    require_carrier(d.order, "group " + d.name);
    Element identity = 0;
    if (auto err = detail::check_group_table(d.order, d.table, identity)) {
        throw std::invalid_argument("group " + d.name + ": " + *err);
    }
    d.identity = identity;
    d.inverse.assign(d.order, 0);
    for (std::size_t x = 0; x < d.order; ++x)
        for (std::size_t y = 0; y < d.order; ++y)
            if (d.table[x * d.order + y] == identity) {
                d.inverse[x] = static_cast<Element>(y);
                break;
            }
    return FiniteGroup(std::make_shared<const Data>(std::move(d)));
}

inline FiniteGroup FiniteGroup::cyclic(std::uint32_t m) {
    if (m == 0) throw std::invalid_argument("cyclic group needs m >= 1");
    require_carrier(m, "Z" + std::to_string(m));
    Data d;
    d.family = Family::cyclic;
    d.name = "Z" + std::to_string(m);
    d.order = m;
    d.parameter = m;
    d.table.resize(std::size_t(m) * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) d.table[a * m + b] = static_cast<Element>((a + b) % m);
    return finish(std::move(d));
}

inline FiniteGroup FiniteGroup::product(std::vector<FiniteGroup> factors) {
    if (factors.empty()) throw std::invalid_argument("product of an empty factor list");
    std::uint64_t order = 1;
    std::string name;
    for (const auto& f : factors) {
        if (order * f.order() > max_carrier()) {
            throw std::length_error("product group exceeds the table bound " + std::to_string(max_carrier()));
        }
        order *= f.order();
        if (!name.empty()) name += " x ";
        name += f.family() == Family::product ? "(" + f.name() + ")" : f.name();
    }
    Data d;
    d.family = Family::product;
    d.name = name;
    d.order = order;
    d.strides.assign(factors.size(), 1);
    for (std::size_t i = factors.size(); i-- > 1;) d.strides[i - 1] = d.strides[i] * factors[i].order();
    const std::size_t k = factors.size();
    std::vector<Element> coords(order * k);
    for (std::size_t x = 0; x < order; ++x) {
        std::size_t rest = x;
        for (std::size_t i = 0; i < k; ++i) {
            coords[x * k + i] = static_cast<Element>(rest / d.strides[i]);
            rest %= d.strides[i];
        }
    }
    d.table.resize(order * order);
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) {
            std::size_t idx = 0;
            for (std::size_t i = 0; i < k; ++i) {
                idx += factors[i].op(coords[a * k + i], coords[b * k + i]) * d.strides[i];
            }
            d.table[a * order + b] = static_cast<Element>(idx);
        }
    d.factors = std::move(factors);
    return finish(std::move(d));
}

inline FiniteGroup FiniteGroup::power(const FiniteGroup& base, std::size_t k) {
    if (k == 0) throw std::invalid_argument("power of a group needs k >= 1");
    return product(std::vector<FiniteGroup>(k, base));
}

inline FiniteGroup FiniteGroup::dihedral(std::uint32_t k) {
    if (k == 0) throw std::invalid_argument("dihedral group needs k >= 1");
    const std::size_t n = 2 * std::size_t(k);
    require_carrier(n, "D" + std::to_string(k));
    Data d;
    d.family = Family::dihedral;
    d.name = "D" + std::to_string(k);
    d.order = n;
    d.parameter = k;
    d.table.resize(n * n);
    // (r^a s^b)(r^c s^e) = r^(a + (-1)^b c) s^(b+e)
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t a = x % k, b = x / k, c = y % k, e = y / k;
            const std::size_t rot = b == 0 ? (a + c) % k : (a + k - c) % k;
            d.table[x * n + y] = static_cast<Element>(rot + k * ((b + e) % 2));
        }
    return finish(std::move(d));
}

inline FiniteGroup FiniteGroup::quaternion(std::uint32_t order) {
    if (order < 8 || exact_log(order, 2) < 0) {
        throw std::invalid_argument("generalized quaternion group needs order 2^k with k >= 3, got " +
                                    std::to_string(order));
    }
    require_carrier(order, "Q" + std::to_string(order));
    const std::size_t half = order / 2, quarter = order / 4;
    Data d;
    d.family = Family::quaternion;
    d.name = "Q" + std::to_string(order);
    d.order = order;
    d.parameter = order;
    d.table.resize(std::size_t(order) * order);
    // y x^c = x^-c y and y^2 = x^quarter
    for (std::size_t u = 0; u < order; ++u)
        for (std::size_t v = 0; v < order; ++v) {
            const std::size_t a = u % half, b = u / half, c = v % half, e = v / half;
            std::size_t rot = b == 0 ? (a + c) % half : (a + half - c) % half;
            std::size_t ybit = (b + e) % 2;
            if (b == 1 && e == 1) rot = (rot + quarter) % half;
            d.table[u * order + v] = static_cast<Element>(rot + half * ybit);
        }
    return finish(std::move(d));
}

inline FiniteGroup FiniteGroup::tabulated(const std::vector<std::vector<Element>>& table, std::string name) {
    const std::size_t n = table.size();
    if (n == 0) throw std::invalid_argument("tabulated group: empty table");
    require_carrier(n, "tabulated group");
    Data d;
    d.family = Family::tabulated;
    d.name = name.empty() ? "T" + std::to_string(n) : std::move(name);
    d.order = n;
    d.parameter = static_cast<std::uint32_t>(n);
    d.table.reserve(n * n);
    for (const auto& row : table) {
        if (row.size() != n) throw std::invalid_argument("tabulated group: table is not square");
        d.table.insert(d.table.end(), row.begin(), row.end());
    }
    return finish(std::move(d));
}

inline Element FiniteGroup::pow(Element a, std::uint64_t k) const {
    Element result = identity();
    Element base = a;
    while (k > 0) {
        if (k & 1) result = op(result, base);
        base = op(base, base);
        k >>= 1;
    }
    return result;
}

inline bool FiniteGroup::is_abelian() const {
    for (Element a = 0; a < order(); ++a)
        for (Element b = a + 1; b < order(); ++b)
            if (op(a, b) != op(b, a)) return false;
    return true;
}

inline std::vector<Element> FiniteGroup::coordinates(Element x) const {
    require_element(x);
    if (family() != Family::product) return {x};
    std::vector<Element> out(factors().size());
    std::size_t rest = x;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<Element>(rest / data_->strides[i]);
        rest %= data_->strides[i];
    }
    return out;
}

inline Element FiniteGroup::from_coordinates(std::span<const Element> coords) const {
    if (family() != Family::product) {
        if (coords.size() != 1) throw std::invalid_argument(name() + " is not a product group");
        require_element(coords[0]);
        return coords[0];
    }
    if (coords.size() != factors().size()) {
        throw std::invalid_argument("expected " + std::to_string(factors().size()) + " coordinates for " + name());
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        factors()[i].require_element(coords[i]);
        idx += coords[i] * data_->strides[i];
    }
    return static_cast<Element>(idx);
}

inline std::string FiniteGroup::label(Element x) const {
    require_element(x);
    auto power_label = [](const char* sym, std::size_t e) -> std::string {
        if (e == 0) return "";
        if (e == 1) return sym;
        return std::string(sym) + "^" + std::to_string(e);
    };
    switch (family()) {
        case Family::cyclic:
        case Family::tabulated:
            return std::to_string(x);
        case Family::product: {
            std::string out = "(";
            const auto c = coordinates(x);
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i) out += ",";
                out += factors()[i].label(c[i]);
            }
            return out + ")";
        }
        case Family::dihedral: {
            const std::size_t k = parameter();
            std::string out = power_label("r", x % k) + power_label("s", x / k);
            return out.empty() ? "e" : out;
        }
        case Family::quaternion: {
            const std::size_t half = order() / 2;
            std::string out = power_label("x", x % half) + power_label("y", x / half);
            return out.empty() ? "1" : out;
        }
    }
    return std::to_string(x);
}

/// Smallest k >= 1 with x^k = identity.
inline std::uint64_t element_order(const FiniteGroup& g, Element x) {
    g.require_element(x);
    std::uint64_t k = 1;
    for (Element y = x; y != g.identity(); y = g.op(y, x)) ++k;
    return k;
}

// ---------------------------------------------------------------------------
// Subgroups
// ---------------------------------------------------------------------------

/// Why a subset is not a subgroup, or nullopt when it is one.
inline std::optional<std::string> subgroup_defect(const FiniteGroup& g, const std::vector<Element>& elems) {
    std::vector<char> member(g.order(), 0);
    for (Element x : elems) {
        if (!g.valid(x)) return "element " + std::to_string(x) + " not in parent";
        member[x] = 1;
    }
    if (!member[g.identity()]) return "missing identity";
    for (Element a : elems) {
        if (!member[g.inverse(a)]) return "not closed under inverse at " + g.label(a);
        for (Element b : elems)
            if (!member[g.op(a, b)]) return "not closed under the operation at (" + g.label(a) + "," + g.label(b) + ")";
    }
    const std::size_t distinct = static_cast<std::size_t>(std::count(member.begin(), member.end(), 1));
    if (g.order() % distinct != 0) return "order does not divide the parent order";
    return std::nullopt;
}

class Subgroup {
public:
    /// Validates the subgroup axioms; throws std::invalid_argument otherwise.
    static Subgroup from_elements(const FiniteGroup& g, std::vector<Element> elems) {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        if (auto err = subgroup_defect(g, elems)) throw std::invalid_argument("not a subgroup of " + g.name() + ": " + *err);
        return Subgroup(g, std::move(elems));
    }
    static Subgroup whole(const FiniteGroup& g) {
        std::vector<Element> all(g.order());
        std::iota(all.begin(), all.end(), Element{0});
        return Subgroup(g, std::move(all));
    }
    static Subgroup trivial(const FiniteGroup& g) { return Subgroup(g, {g.identity()}); }

    const FiniteGroup& parent() const { return parent_; }
    const std::vector<Element>& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }
    std::size_t index() const { return parent_.order() / order(); }
    bool contains(Element x) const { return x < position_.size() && position_[x] != npos; }
    /// Position of x in elements(), or npos.
    Element position(Element x) const { return x < position_.size() ? position_[x] : npos; }
    bool is_subset_of(const Subgroup& other) const {
        return std::all_of(elements_.begin(), elements_.end(), [&](Element x) { return other.contains(x); });
    }
    bool operator==(const Subgroup& other) const { return elements_ == other.elements_; }
    bool operator<(const Subgroup& other) const { return elements_ < other.elements_; }

    /// The subgroup as a group in its own right, element k <-> elements()[k].
    FiniteGroup as_group() const {
        const std::size_t n = order();
        std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) table[a][b] = position_[parent_.op(elements_[a], elements_[b])];
        return FiniteGroup::tabulated(table, "subgroup of order " + std::to_string(n) + " in " + parent_.name());
    }

private:
    Subgroup(const FiniteGroup& g, std::vector<Element> sorted)
        : parent_(g), elements_(std::move(sorted)), position_(g.order(), npos) {
        for (std::size_t i = 0; i < elements_.size(); ++i) position_[elements_[i]] = static_cast<Element>(i);
    }
    FiniteGroup parent_;
    std::vector<Element> elements_;
    std::vector<Element> position_;
};

/// Smallest subgroup containing gens.
inline Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Element> gens) {
    for (Element x : gens) g.require_element(x);
    std::vector<char> member(g.order(), 0);
    std::vector<Element> elems{g.identity()};
    member[g.identity()] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (Element s : gens) {
            const Element y = g.op(elems[i], s);
            if (!member[y]) {
                member[y] = 1;
                elems.push_back(y);
            }
        }
    }
    return Subgroup::from_elements(g, std::move(elems));
}

inline Subgroup subgroup_generated(const FiniteGroup& g, std::initializer_list<Element> gens) {
    return subgroup_generated(g, std::span<const Element>(gens.begin(), gens.size()));
}

struct CyclicSubgroup {
    Subgroup subgroup;
    Element generator;
};

/// <n> inside Z_m, the subgroup of index n, with designated generator h = n (mod m).
inline CyclicSubgroup cyclic_subgroup_of_index(const FiniteGroup& zm, std::uint32_t n) {
    if (!zm.is_cyclic_family()) throw std::invalid_argument(zm.name() + " is not a cyclic group Z_m");
    const std::uint32_t m = zm.parameter();
    if (n == 0 || m % n != 0) {
        throw std::invalid_argument("index " + std::to_string(n) + " does not divide " + std::to_string(m));
    }
    const Element h = n % m;
    return {subgroup_generated(zm, {h}), h};
}

/// All subgroups of g in ascending lexicographic order of their element lists.
/// Cyclic groups use divisor arithmetic; other groups are enumerated by closure
/// and must have order <= 64.
inline std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g) {
    std::vector<Subgroup> out;
    if (g.is_cyclic_family()) {
        const std::uint32_t m = g.parameter();
        for (std::uint32_t d = 1; d <= m; ++d)
            if (m % d == 0) out.push_back(subgroup_generated(g, {static_cast<Element>(d % m)}));
        std::sort(out.begin(), out.end());
        return out;
    }
    if (g.order() > 64) {
        throw std::length_error("subgroup enumeration is bounded to order 64, " + g.name() + " has order " +
                                std::to_string(g.order()));
    }
    std::set<std::vector<Element>> seen;
    std::vector<Subgroup> queue{Subgroup::trivial(g)};
    seen.insert(queue.front().elements());
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const Subgroup current = queue[i];
        for (Element x = 0; x < g.order(); ++x) {
            if (current.contains(x)) continue;
            std::vector<Element> gens = current.elements();
            gens.push_back(x);
            Subgroup next = subgroup_generated(g, gens);
            if (seen.insert(next.elements()).second) queue.push_back(std::move(next));
        }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

/// Lexicographically smallest subgroup of the given order, if any.
inline std::optional<Subgroup> smallest_subgroup_of_order(const FiniteGroup& g, std::size_t order) {
    for (auto& s : enumerate_subgroups(g))
        if (s.order() == order) return s;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Cosets
// ---------------------------------------------------------------------------

/// One representative per right coset H g of a subgroup inside an ambient subgroup.
class Transversal {
public:
    const Subgroup& subgroup() const { return subgroup_; }
    const Subgroup& ambient() const { return ambient_; }
    const std::vector<Element>& representatives() const { return reps_; }
    std::size_t size() const { return reps_.size(); }
    /// Coset index of x (x in ambient), i.e. the j with x in H g_j.
    std::size_t coset_of(Element x) const {
        if (!ambient_.contains(x)) throw std::out_of_range("element outside the ambient group");
        return coset_[x];
    }
    /// x = h * g_j; returns {h, j}.
    std::pair<Element, std::size_t> decompose(Element x) const {
        const std::size_t j = coset_of(x);
        return {subgroup_.parent().difference(x, reps_[j]), j};
    }

    static Transversal canonical(const Subgroup& h, const Subgroup& ambient) {
        const FiniteGroup& g = h.parent();
        if (!g.same_table(ambient.parent())) throw std::invalid_argument("subgroups of different groups");
        if (!h.is_subset_of(ambient)) throw std::invalid_argument("subgroup is not contained in the ambient group");
        Transversal t(h, ambient);
        t.coset_.assign(g.order(), npos);
        auto add = [&](Element rep) {
            const Element j = static_cast<Element>(t.reps_.size());
            t.reps_.push_back(rep);
            for (Element x : h.elements()) t.coset_[g.op(x, rep)] = j;
        };
        add(g.identity());
        for (Element x : ambient.elements())
            if (t.coset_[x] == npos) add(x);
        return t;
    }

private:
    Transversal(Subgroup h, Subgroup ambient) : subgroup_(std::move(h)), ambient_(std::move(ambient)) {}
    Subgroup subgroup_;
    Subgroup ambient_;
    std::vector<Element> reps_;
    std::vector<Element> coset_;
};

/// Canonical right transversal of H in G: the smallest element of each coset,
/// identity coset first, remaining cosets ordered by representative.
inline Transversal transversal(const FiniteGroup& g, const Subgroup& h) {
    if (!g.same_table(h.parent())) throw std::invalid_argument("H is not a subgroup of " + g.name());
    return Transversal::canonical(h, Subgroup::whole(g));
}

inline Transversal transversal(const Subgroup& h, const Subgroup& ambient) { return Transversal::canonical(h, ambient); }

// ---------------------------------------------------------------------------
// Chains
// ---------------------------------------------------------------------------

struct ChainViolation {
    std::size_t term;
    std::string kind;  // subgroup | start | endpoint | inclusion | empty
    std::string detail;
};

struct ChainReport {
    bool valid = false;
    std::vector<std::size_t> indices;  // r_i = |H_i| / |H_{i-1}|, 0 when not integral
    std::vector<ChainViolation> violations;
};

/// Checks H_0 = {e}, H_n = G, strict inclusions and the subgroup property of every term.
inline ChainReport validate_chain(const FiniteGroup& g, const std::vector<std::vector<Element>>& terms) {
    ChainReport report;
    if (terms.empty()) {
        report.violations.push_back({0, "empty", "chain has no terms"});
        return report;
    }
    std::vector<std::vector<Element>> sorted = terms;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        auto& t = sorted[i];
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        if (auto err = subgroup_defect(g, t)) report.violations.push_back({i, "subgroup", *err});
    }
    if (sorted.front() != std::vector<Element>{g.identity()}) {
        report.violations.push_back({0, "start", "first term is not the trivial subgroup"});
    }
    if (sorted.back().size() != g.order()) {
        report.violations.push_back({sorted.size() - 1, "endpoint", "last term is not the whole group"});
    }
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const auto& lo = sorted[i - 1];
        const auto& hi = sorted[i];
        const bool subset = std::includes(hi.begin(), hi.end(), lo.begin(), lo.end());
        if (!subset || lo.size() == hi.size()) {
            report.violations.push_back({i, "inclusion", "term " + std::to_string(i - 1) +
                                                             " is not strictly contained in term " + std::to_string(i)});
        }
        report.indices.push_back(!lo.empty() && hi.size() % lo.size() == 0 ? hi.size() / lo.size() : 0);
    }
    report.valid = report.violations.empty();
    return report;
}

/// A verified chain {e} = H_0 < H_1 < ... < H_n = G.
class SubgroupChain {
public:
    static SubgroupChain from_terms(const FiniteGroup& g, std::vector<Subgroup> terms) {
        std::vector<std::vector<Element>> raw;
        for (const auto& t : terms) {
            if (!g.same_table(t.parent())) throw std::invalid_argument("chain term belongs to a different group");
            raw.push_back(t.elements());
        }
        const auto report = validate_chain(g, raw);
        if (!report.valid) {
            const auto& v = report.violations.front();
            throw std::invalid_argument("invalid chain (" + v.kind + " at term " + std::to_string(v.term) + "): " + v.detail);
        }
        return SubgroupChain(g, std::move(terms), report.indices);
    }
    static SubgroupChain from_elements(const FiniteGroup& g, const std::vector<std::vector<Element>>& terms) {
        const auto report = validate_chain(g, terms);
        if (!report.valid) {
            const auto& v = report.violations.front();
            throw std::invalid_argument("invalid chain (" + v.kind + " at term " + std::to_string(v.term) + "): " + v.detail);
        }
        std::vector<Subgroup> subs;
        for (const auto& t : terms) subs.push_back(Subgroup::from_elements(g, t));
        return SubgroupChain(g, std::move(subs), report.indices);
    }

    const FiniteGroup& parent() const { return parent_; }
    const std::vector<Subgroup>& terms() const { return terms_; }
    const Subgroup& operator[](std::size_t i) const { return terms_.at(i); }
    /// n, the number of strict steps.
    std::size_t length() const { return terms_.size() - 1; }
    const std::vector<std::size_t>& indices() const { return indices_; }
    std::vector<std::size_t> orders() const {
        std::vector<std::size_t> out;
        for (const auto& t : terms_) out.push_back(t.order());
        return out;
    }

private:
    SubgroupChain(FiniteGroup g, std::vector<Subgroup> terms, std::vector<std::size_t> idx)
        : parent_(std::move(g)), terms_(std::move(terms)), indices_(std::move(idx)) {}
    FiniteGroup parent_;
    std::vector<Subgroup> terms_;
    std::vector<std::size_t> indices_;
};

inline ChainReport validate_chain(const SubgroupChain& chain) {
    std::vector<std::vector<Element>> raw;
    for (const auto& t : chain.terms()) raw.push_back(t.elements());
    return validate_chain(chain.parent(), raw);
}

namespace detail {

inline std::vector<std::size_t> normalize_orders(const FiniteGroup& g, std::vector<std::size_t> orders) {
    if (orders.empty() || orders.front() != 1) orders.insert(orders.begin(), 1);
    if (orders.back() != g.order()) orders.push_back(g.order());
    for (std::size_t i = 1; i < orders.size(); ++i) {
        if (orders[i] <= orders[i - 1] || orders[i] % orders[i - 1] != 0) {
            throw std::invalid_argument("chain orders must form a strictly increasing divisor chain ending at " +
                                        std::to_string(g.order()));
        }
    }
    return orders;
}

inline bool extend_chain(const std::vector<Subgroup>& all, const std::vector<std::size_t>& orders,
                         std::vector<Subgroup>& terms) {
    const std::size_t step = terms.size();
    if (step == orders.size()) return true;
    for (const auto& s : all) {
        if (s.order() != orders[step] || !terms.back().is_subset_of(s)) continue;
        terms.push_back(s);
        if (extend_chain(all, orders, terms)) return true;
        terms.pop_back();
    }
    return false;
}

}  // namespace detail

/// The lexicographically first chain whose term orders are `orders` (1 and |G| may be omitted).
inline std::optional<SubgroupChain> chain_with_orders(const FiniteGroup& g, std::vector<std::size_t> orders) {
    orders = detail::normalize_orders(g, std::move(orders));
    if (g.is_cyclic_family()) {
        std::vector<Subgroup> terms;
        for (std::size_t o : orders) {
            if (g.order() % o != 0) return std::nullopt;
            terms.push_back(subgroup_generated(g, {static_cast<Element>((g.order() / o) % g.order())}));
        }
        return SubgroupChain::from_terms(g, std::move(terms));
    }
    const auto all = enumerate_subgroups(g);
    std::vector<Subgroup> terms{Subgroup::trivial(g)};
    if (!detail::extend_chain(all, orders, terms)) return std::nullopt;
    return SubgroupChain::from_terms(g, std::move(terms));
}

/// Chain with every consecutive index equal to q; requires |G| = q^n, n >= 1.
inline SubgroupChain geometric_chain(const FiniteGroup& g, std::uint64_t q) {
    const int n = exact_log(g.order(), q);
    if (n < 1) {
        throw std::invalid_argument("order " + std::to_string(g.order()) + " of " + g.name() + " is not a power of " +
                                    std::to_string(q));
    }
    std::vector<std::size_t> orders;
    for (int i = 0; i <= n; ++i) orders.push_back(checked_pow(q, i));
    auto chain = chain_with_orders(g, orders);
    if (!chain) throw std::logic_error("no geometric chain of index " + std::to_string(q) + " in " + g.name());
    return *chain;
}

/// {e} < X x {e}^(k-1) < X^2 x {e}^(k-2) < ... for a product group of k factors.
inline SubgroupChain coordinate_chain(const FiniteGroup& product) {
    if (product.family() != FiniteGroup::Family::product) {
        throw std::invalid_argument(product.name() + " is not a product group");
    }
    const std::size_t k = product.factors().size();
    std::vector<std::vector<Element>> terms(k + 1);
    for (Element x = 0; x < product.order(); ++x) {
        const auto c = product.coordinates(x);
        std::size_t last = 0;  // number of leading coordinates that may be non-identity
        for (std::size_t i = 0; i < k; ++i)
            if (c[i] != product.factors()[i].identity()) last = i + 1;
        for (std::size_t t = last; t <= k; ++t) terms[t].push_back(x);
    }
    return SubgroupChain::from_elements(product, terms);
}

// ---------------------------------------------------------------------------
// Group descriptor DSL:  Z<m>  D<k>  Q<2^k>  A^k  A x B   (whitespace-insensitive)
// ---------------------------------------------------------------------------

namespace detail {

class GroupParser {
public:
    explicit GroupParser(std::string_view text) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) src_ += c;
    }
    FiniteGroup parse() {
        if (src_.empty()) fail("empty group descriptor");
        std::vector<FiniteGroup> factors = parse_power();
        while (pos_ < src_.size() && src_[pos_] == 'x') {
            ++pos_;
            auto more = parse_power();
            factors.insert(factors.end(), more.begin(), more.end());
        }
        if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        if (factors.size() == 1) return factors.front();
        return FiniteGroup::product(std::move(factors));
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("malformed group descriptor '" + src_ + "' at " + std::to_string(pos_) + ": " + msg);
    }
    std::uint64_t number() {
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(src_[pos_] - '0');
            if (v > (1u << 30)) fail("number too large");
            ++pos_;
        }
        if (pos_ == start) fail("expected a number");
        return v;
    }
    std::vector<FiniteGroup> parse_power() {
        FiniteGroup atom = parse_atom();
        if (pos_ < src_.size() && src_[pos_] == '^') {
            ++pos_;
            const std::uint64_t k = number();
            if (k == 0) fail("exponent must be >= 1");
            return std::vector<FiniteGroup>(k, atom);
        }
        return {atom};
    }
    FiniteGroup parse_atom() {
        if (pos_ >= src_.size()) fail("expected Z, D or Q");
        const char kind = src_[pos_++];
        if (kind != 'Z' && kind != 'D' && kind != 'Q') fail("expected Z, D or Q");
        const auto v = static_cast<std::uint32_t>(number());
        if (v == 0) fail("parameter must be >= 1");
        if (kind == 'Z') return FiniteGroup::cyclic(v);
        if (kind == 'D') return FiniteGroup::dihedral(v);
        return FiniteGroup::quaternion(v);
    }
    std::string src_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Builds a group from the descriptor DSL, e.g. "Z12", "Z2 x Z4", "Z2^3", "D4", "Q8".
inline FiniteGroup make_group(std::string_view descriptor) { return detail::GroupParser(descriptor).parse(); }

}  // namespace grpmetric

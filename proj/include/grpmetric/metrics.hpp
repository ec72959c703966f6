#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "common.hpp"
#include "groups.hpp"

namespace grpmetric {

using Distance = std::uint32_t;

enum class MetricKind {
    hamming,
    lee,
    qadic,
    rt,
    brt,
    chain,
    extended,
    diagonal,
    homogeneous,
    pullback,
    product,
    rescaled,
    custom
};

inline const char* to_string(MetricKind k) {
    switch (k) {
        case MetricKind::hamming: return "hamming";
        case MetricKind::lee: return "lee";
        case MetricKind::qadic: return "qadic";
        case MetricKind::rt: return "rt";
        case MetricKind::brt: return "brt";
        case MetricKind::chain: return "chain";
        case MetricKind::extended: return "extended";
        case MetricKind::diagonal: return "diagonal";
        case MetricKind::homogeneous: return "homogeneous";
        case MetricKind::pullback: return "pullback";
        case MetricKind::product: return "product";
        case MetricKind::rescaled: return "rescaled";
        case MetricKind::custom: return "custom";
    }
    return "custom";
}

/**
 * Dense integral distance matrix on a carrier 0..size-1, optionally carried by a group
 * whose encoding matches the point indices.
 *
 * Construction checks the cheap axioms (zero diagonal, positivity, symmetry). The triangle
 * inequality and invariance are O(n^3) and left to validate_metric.
 */
class MetricTable {
public:
    MetricTable() = default;

    static MetricTable from_entries(std::size_t n, std::vector<Distance> entries, MetricKind kind, std::string label,
                                    std::optional<FiniteGroup> group = std::nullopt, bool ultrametric = false) {
        require_carrier(n, "metric " + label);
        if (n == 0) throw std::invalid_argument("metric " + label + ": empty carrier");
        if (entries.size() != n * n) throw std::invalid_argument("metric " + label + ": matrix is not " + std::to_string(n) + "x" + std::to_string(n));
        if (group && group->order() != n) {
            throw std::invalid_argument("metric " + label + ": group order " + std::to_string(group->order()) +
                                        " does not match carrier " + std::to_string(n));
        }
        for (std::size_t x = 0; x < n; ++x) {
            if (entries[x * n + x] != 0) throw std::invalid_argument("metric " + label + ": d(x,x) != 0 at x=" + std::to_string(x));
            for (std::size_t y = x + 1; y < n; ++y) {
                const Distance a = entries[x * n + y];
                if (a != entries[y * n + x]) {
                    throw std::invalid_argument("metric " + label + ": not symmetric at (" + std::to_string(x) + "," + std::to_string(y) + ")");
                }
                if (a == 0) {
                    throw std::invalid_argument("metric " + label + ": d(x,y)=0 for x != y at (" + std::to_string(x) + "," + std::to_string(y) + ")");
                }
            }
        }
        MetricTable t;
        t.n_ = n;
        t.d_ = std::move(entries);
        t.kind_ = kind;
        t.label_ = std::move(label);
        t.group_ = std::move(group);
        t.ultrametric_ = ultrametric;
        return t;
    }

    static MetricTable from_matrix(const std::vector<std::vector<Distance>>& rows, MetricKind kind = MetricKind::custom,
                                   std::string label = "custom", std::optional<FiniteGroup> group = std::nullopt) {
        std::vector<Distance> flat;
        flat.reserve(rows.size() * rows.size());
        for (const auto& r : rows) {
            if (r.size() != rows.size()) throw std::invalid_argument("metric " + label + ": matrix is not square");
            flat.insert(flat.end(), r.begin(), r.end());
        }
        return from_entries(rows.size(), std::move(flat), kind, std::move(label), std::move(group));
    }

    /// d(x,y) = w(x y^-1). w must vanish exactly at the identity and satisfy w(x^-1) = w(x).
    static MetricTable from_group_weight(const FiniteGroup& g, const std::vector<Distance>& w, MetricKind kind,
                                         std::string label, bool ultrametric = false) {
        const std::size_t n = g.order();
        if (w.size() != n) throw std::invalid_argument("weight vector length does not match " + g.name());
        std::vector<Distance> entries(n * n);
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y) entries[std::size_t(x) * n + y] = w[g.difference(x, y)];
        return from_entries(n, std::move(entries), kind, std::move(label), g, ultrametric);
    }

    std::size_t size() const { return n_; }
    Distance operator()(Element x, Element y) const { return d_[std::size_t(x) * n_ + y]; }
    Distance at(Element x, Element y) const {
        if (x >= n_ || y >= n_) throw std::out_of_range("point outside the carrier of " + label_);
        return (*this)(x, y);
    }
    std::span<const Distance> row(Element x) const { return {d_.data() + std::size_t(x) * n_, n_}; }
    const std::vector<Distance>& entries() const { return d_; }
    MetricKind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    const std::optional<FiniteGroup>& group() const { return group_; }
    /// Advertised by the constructor; validate_metric decides the truth.
    bool advertised_ultrametric() const { return ultrametric_; }
    Distance max_distance() const { return d_.empty() ? 0 : *std::max_element(d_.begin(), d_.end()); }
    /// Base point used for weights: the group identity, or point 0 on a bare set.
    Element zero() const { return group_ ? group_->identity() : 0; }

    bool same_entries(const MetricTable& o) const { return n_ == o.n_ && d_ == o.d_; }

    MetricTable with_group(FiniteGroup g) const {
        return from_entries(n_, d_, kind_, label_, std::move(g), ultrametric_);
    }
    MetricTable relabeled(std::string label) const {
        MetricTable t = *this;
        t.label_ = std::move(label);
        return t;
    }

private:
    std::size_t n_ = 0;
    std::vector<Distance> d_;
    MetricKind kind_ = MetricKind::custom;
    std::string label_;
    std::optional<FiniteGroup> group_;
    bool ultrametric_ = false;
};

// ---------------------------------------------------------------------------
// Closed-form weights, kept independent of the table builders for cross-checks.
// ---------------------------------------------------------------------------

inline Distance lee_weight(std::uint64_t m, std::uint64_t t) {
    t %= m;
    return static_cast<Distance>(std::min(t, m - t));
}

/// min{ i : q^(n-i) | x } on Z_{q^n}.
inline Distance qadic_weight(std::uint64_t q, unsigned n, std::uint64_t x) {
    const std::uint64_t mod = checked_pow(q, n);
    x %= mod;
    for (unsigned i = 0; i <= n; ++i)
        if (x % checked_pow(q, n - i) == 0) return i;
    return n;
}

/// ceil(log_q ord(x)) on Z_{q^n}.
inline Distance qadic_weight_via_order(std::uint64_t q, unsigned n, std::uint64_t x) {
    const std::uint64_t mod = checked_pow(q, n);
    const std::uint64_t ord = mod / std::gcd(x % mod, mod);
    Distance k = 0;
    for (std::uint64_t p = 1; p < ord; p *= q) ++k;
    return k;
}

/// Weight of the pullback of the Hamming metric along the generalized Gray map of Z_m into H^n.
inline Distance psi_weight(std::uint64_t m, std::uint64_t n, std::uint64_t t) {
    t %= m;
    if (t <= n) return static_cast<Distance>(t);
    if (t <= m - n) return static_cast<Distance>(n);
    return static_cast<Distance>(m - t);
}

inline Distance homogeneous_weight(std::uint64_t p, unsigned n, std::uint64_t x) {
    const std::uint64_t mod = checked_pow(p, n);
    const std::uint64_t top = checked_pow(p, n - 1);
    x %= mod;
    if (x == 0) return 0;
    if (x % top == 0) return static_cast<Distance>(top);
    return static_cast<Distance>(checked_pow(p, n - 2) * (p - 1));
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// Discrete metric on a bare set.
inline MetricTable hamming_metric(std::size_t size) {
    if (size == 0) throw std::invalid_argument("hamming metric needs size >= 1");
    require_carrier(size, "hamming");
    std::vector<Distance> e(size * size, 1);
    for (std::size_t x = 0; x < size; ++x) e[x * size + x] = 0;
    return MetricTable::from_entries(size, std::move(e), MetricKind::hamming, "hamming(" + std::to_string(size) + ")",
                                     std::nullopt, true);
}

/// Discrete metric carried by a group.
inline MetricTable discrete_metric(const FiniteGroup& g) {
    std::vector<Distance> w(g.order(), 1);
    w[g.identity()] = 0;
    return MetricTable::from_group_weight(g, w, MetricKind::hamming, "discrete(" + g.name() + ")", true);
}

inline MetricTable product_metric(const std::vector<MetricTable>& factors) {
    if (factors.empty()) throw std::invalid_argument("product metric of an empty factor list");
    std::size_t n = 1;
    for (const auto& f : factors) {
        if (n * f.size() > max_carrier()) {
            throw std::length_error("product metric exceeds the table bound " + std::to_string(max_carrier()));
        }
        n *= f.size();
    }
    const std::size_t k = factors.size();
    std::vector<Element> coords(n * k);
    for (std::size_t x = 0; x < n; ++x) {
        std::size_t rest = x;
        for (std::size_t i = k; i-- > 0;) {
            coords[x * k + i] = static_cast<Element>(rest % factors[i].size());
            rest /= factors[i].size();
        }
    }
    std::vector<Distance> e(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x; y < n; ++y) {
            Distance s = 0;
            for (std::size_t i = 0; i < k; ++i) s += factors[i](coords[x * k + i], coords[y * k + i]);
            e[x * n + y] = e[y * n + x] = s;
        }
    std::optional<FiniteGroup> group;
    if (std::all_of(factors.begin(), factors.end(), [](const MetricTable& f) { return f.group().has_value(); })) {
        std::vector<FiniteGroup> gs;
        for (const auto& f : factors) gs.push_back(*f.group());
        group = FiniteGroup::product(std::move(gs));
    }
    std::string label;
    for (const auto& f : factors) label += (label.empty() ? "" : " x ") + f.label();
    return MetricTable::from_entries(n, std::move(e), MetricKind::product, label, std::move(group));
}

inline MetricTable power_metric(const MetricTable& d, std::size_t k) {
    if (k == 0) throw std::invalid_argument("metric power needs k >= 1");
    MetricTable p = product_metric(std::vector<MetricTable>(k, d));
    return p.relabeled(d.label() + "^" + std::to_string(k));
}

/// Coordinatewise Hamming on a product group, discrete metric otherwise.
inline MetricTable hamming_metric(const FiniteGroup& g) {
    if (g.family() != FiniteGroup::Family::product) return discrete_metric(g);
    std::vector<MetricTable> fs;
    for (const auto& f : g.factors()) fs.push_back(discrete_metric(f));
    const MetricTable p = product_metric(fs);
    return MetricTable::from_entries(p.size(), p.entries(), MetricKind::hamming, "hamming(" + g.name() + ")", g);
}

inline MetricTable lee_metric(std::uint32_t m) {
    if (m < 1) throw std::invalid_argument("lee metric needs m >= 1");
    const FiniteGroup g = FiniteGroup::cyclic(m);
    std::vector<Distance> w(m);
    for (std::uint32_t t = 0; t < m; ++t) w[t] = lee_weight(m, t);
    return MetricTable::from_group_weight(g, w, MetricKind::lee, "lee(" + std::to_string(m) + ")", m <= 3);
}

/// Lee metric on a cyclic subgroup, through its smallest generator: w(g^k) = min(k, |H|-k).
inline MetricTable lee_metric(const Subgroup& h) {
    const FiniteGroup& g = h.parent();
    for (Element x : h.elements()) {
        if (element_order(g, x) != h.order()) continue;
        std::vector<Distance> w(h.order(), 0);
        Element y = g.identity();
        for (std::size_t k = 0; k < h.order(); ++k, y = g.op(y, x)) w[h.position(y)] = lee_weight(h.order(), k);
        return MetricTable::from_group_weight(h.as_group(), w, MetricKind::lee, "lee(subgroup)");
    }
    throw std::invalid_argument("subgroup is not cyclic");
}

inline MetricTable qadic_metric(std::uint32_t q, unsigned n) {
    if (q < 2 || n < 1) throw std::invalid_argument("q-adic metric needs q >= 2 and n >= 1");
    const std::uint64_t size = checked_pow(q, n);
    require_carrier(size, "qadic");
    const FiniteGroup g = FiniteGroup::cyclic(static_cast<std::uint32_t>(size));
    std::vector<Distance> w(size);
    for (std::uint64_t x = 0; x < size; ++x) w[x] = qadic_weight(q, n, x);
    return MetricTable::from_group_weight(g, w, MetricKind::qadic,
                                          "qadic(" + std::to_string(q) + "," + std::to_string(n) + ")", true);
}

/// Block RT metric on K^n: the weight of x is the largest block index (1-based) holding
/// a non-identity coordinate; blocks are consecutive from the left.
inline MetricTable brt_metric(const FiniteGroup& alphabet, const std::vector<std::size_t>& partition) {
    if (partition.empty()) throw std::invalid_argument("block partition is empty");
    std::size_t n = 0;
    for (std::size_t m : partition) {
        if (m == 0) throw std::invalid_argument("block sizes must be >= 1");
        n += m;
    }
    if (saturating_pow(alphabet.order(), n) > max_carrier()) {
        throw std::length_error("BRT carrier " + std::to_string(alphabet.order()) + "^" + std::to_string(n) +
                                " exceeds the table bound " + std::to_string(max_carrier()));
    }
    const FiniteGroup g = FiniteGroup::power(alphabet, n);
    std::vector<std::size_t> block_of(n);
    for (std::size_t b = 0, c = 0; b < partition.size(); ++b)
        for (std::size_t j = 0; j < partition[b]; ++j) block_of[c++] = b + 1;
    std::vector<Distance> w(g.order(), 0);
    for (Element x = 0; x < g.order(); ++x) {
        const auto c = g.coordinates(x);
        for (std::size_t i = 0; i < n; ++i)
            if (c[i] != alphabet.identity()) w[x] = static_cast<Distance>(block_of[i]);
    }
    return MetricTable::from_group_weight(g, w, MetricKind::brt,
                                          "brt(" + alphabet.name() + ";" + join_numbers(partition, "+") + ")", true);
}

/// Validates that a block partition sums to the exponent n of K^n.
inline void require_partition(const std::vector<std::size_t>& partition, std::size_t n) {
    std::size_t total = 0;
    for (std::size_t m : partition) total += m;
    if (total != n) {
        throw std::invalid_argument("block partition sums to " + std::to_string(total) + ", expected " + std::to_string(n));
    }
}

inline MetricTable brt_metric(const FiniteGroup& alphabet, std::size_t n, const std::vector<std::size_t>& partition) {
    require_partition(partition, n);
    return brt_metric(alphabet, partition);
}

/// RT metric on K^n: largest 1-based index of a non-identity coordinate.
inline MetricTable rt_metric(const FiniteGroup& alphabet, std::size_t n) {
    MetricTable t = brt_metric(alphabet, std::vector<std::size_t>(n, 1));
    return MetricTable::from_entries(t.size(), t.entries(), MetricKind::rt,
                                     "rt(" + alphabet.name() + "^" + std::to_string(n) + ")", t.group(), true);
}

inline MetricTable rt_metric(std::uint32_t q, std::size_t n) {
    if (q < 2 || n < 1) throw std::invalid_argument("RT metric needs q >= 2 and n >= 1");
    return rt_metric(FiniteGroup::cyclic(q), n);
}

/// d(x,y) = i where x y^-1 lies in H_i but not H_(i-1).
inline MetricTable chain_metric(const SubgroupChain& chain) {
    const FiniteGroup& g = chain.parent();
    std::vector<Distance> w(g.order(), npos);
    for (std::size_t i = 0; i < chain.terms().size(); ++i)
        for (Element x : chain[i].elements())
            if (w[x] == npos) w[x] = static_cast<Distance>(i);
    return MetricTable::from_group_weight(g, w, MetricKind::chain,
                                          "chain(" + g.name() + ";" + join_numbers(chain.orders(), "|") + ")", true);
}

namespace detail {

inline std::optional<std::array<Element, 3>> right_invariance_witness(const FiniteGroup& g, const MetricTable& d) {
    const std::size_t n = g.order();
    for (Element h = 0; h < n; ++h)
        for (Element x = 0; x < n; ++x) {
            const Element xh = g.op(x, h);
            for (Element y = 0; y < n; ++y)
                if (d(xh, g.op(y, h)) != d(x, y)) return std::array<Element, 3>{x, y, h};
        }
    return std::nullopt;
}

}  // namespace detail

/**
 * Lifts a metric d_H on H (points indexed by position in H's sorted element list) to G:
 * d(x,y) = d_H(x y^-1, e) when x y^-1 is in H, and max(d_H) + 1 otherwise.
 * d_H must be right-invariant on H; this is verified.
 */
inline MetricTable extend_metric(const FiniteGroup& g, const Subgroup& h, const MetricTable& d_h) {
    if (!g.same_table(h.parent())) throw std::invalid_argument("extend_metric: H is not a subgroup of " + g.name());
    if (d_h.size() != h.order()) {
        throw std::invalid_argument("extend_metric: metric carrier " + std::to_string(d_h.size()) +
                                    " does not match |H| = " + std::to_string(h.order()));
    }
    const FiniteGroup hg = h.as_group();
    if (detail::right_invariance_witness(hg, d_h)) {
        throw std::invalid_argument("extend_metric: base metric is not right-invariant on H");
    }
    const Element e_pos = h.position(g.identity());
    const Distance top = d_h.max_distance() + 1;
    std::vector<Distance> w(g.order(), top);
    for (Element x : h.elements()) w[x] = d_h(h.position(x), e_pos);
    return MetricTable::from_group_weight(g, w, MetricKind::extended,
                                          "ext(" + d_h.label() + " -> " + g.name() + ")", d_h.advertised_ultrametric());
}

/// Iterated extension along H_1 < H_2 < ... < H_n = G, starting from d_base on H_1.
inline MetricTable ext_chain(const SubgroupChain& chain, const MetricTable& d_base) {
    if (chain.length() < 1) throw std::invalid_argument("ext_chain needs a chain of length >= 1");
    const FiniteGroup& g = chain.parent();
    if (d_base.size() != chain[1].order()) throw std::invalid_argument("ext_chain: base metric must live on H_1");
    if (chain.length() == 1) return d_base.with_group(g);
    MetricTable current = d_base;
    for (std::size_t i = 2; i <= chain.length(); ++i) {
        const Subgroup& lower = chain[i - 1];
        const Subgroup& upper = chain[i];
        if (upper.order() == g.order()) {
            current = extend_metric(g, lower, current);
            continue;
        }
        const FiniteGroup ug = upper.as_group();
        std::vector<Element> inside;
        for (Element x : lower.elements()) inside.push_back(upper.position(x));
        current = extend_metric(ug, Subgroup::from_elements(ug, inside), current);
    }
    return current.relabeled("ext_chain(" + d_base.label() + " -> " + g.name() + ")");
}

/**
 * Diagonal chain metric on X^(r^n): with sigma the cyclic shift of the r^n coordinates,
 * w(x) = min{ i in 1..n+1 : sigma^(r^(i-1)) x = x } and w(identity tuple) = 0.
 */
inline MetricTable diagonal_chain_metric(const FiniteGroup& x_group, std::uint32_t r, unsigned n) {
    if (r < 2) throw std::invalid_argument("diagonal chain metric needs r >= 2");
    const std::uint64_t len = checked_pow(r, n);
    if (saturating_pow(x_group.order(), len) > max_carrier()) {
        throw std::length_error("diagonal chain carrier exceeds the table bound " + std::to_string(max_carrier()));
    }
    const FiniteGroup g = FiniteGroup::power(x_group, len);
    std::vector<Distance> w(g.order(), 0);
    for (Element x = 0; x < g.order(); ++x) {
        if (x == g.identity()) continue;
        const auto c = g.coordinates(x);
        Distance weight = static_cast<Distance>(n + 1);
        for (unsigned i = 1; i <= n; ++i) {
            const std::size_t shift = checked_pow(r, i - 1);
            bool fixed = true;
            for (std::size_t j = 0; j < len && fixed; ++j) fixed = c[j] == c[(j + shift) % len];
            if (fixed) {
                weight = i;
                break;
            }
        }
        w[x] = weight;
    }
    return MetricTable::from_group_weight(g, w, MetricKind::diagonal,
                                          "diagonal(" + x_group.name() + ";" + std::to_string(r) + "," + std::to_string(n) + ")",
                                          true);
}

inline MetricTable homogeneous_metric(std::uint32_t p, unsigned n) {
    if (!is_prime(p)) throw std::invalid_argument("homogeneous metric needs a prime, got " + std::to_string(p));
    if (n < 2) throw std::invalid_argument("homogeneous metric needs n >= 2");
    const std::uint64_t size = checked_pow(p, n);
    require_carrier(size, "homogeneous");
    const FiniteGroup g = FiniteGroup::cyclic(static_cast<std::uint32_t>(size));
    std::vector<Distance> w(size);
    for (std::uint64_t x = 0; x < size; ++x) w[x] = homogeneous_weight(p, n, x);
    return MetricTable::from_group_weight(g, w, MetricKind::homogeneous,
                                          "homogeneous(" + std::to_string(p) + "," + std::to_string(n) + ")");
}

/// d_f(x,x') = d(f(x), f(x')) for an injective f into the carrier of d.
inline MetricTable pullback_metric(std::span<const Element> f, const MetricTable& d,
                                   std::optional<FiniteGroup> carrier = std::nullopt) {
    const std::size_t n = f.size();
    std::vector<char> hit(d.size(), 0);
    for (Element y : f) {
        if (y >= d.size()) throw std::invalid_argument("pullback: image point outside the target carrier");
        if (hit[y]) throw std::invalid_argument("pullback: map is not injective");
        hit[y] = 1;
    }
    std::vector<Distance> e(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) e[x * n + y] = d(f[x], f[y]);
    return MetricTable::from_entries(n, std::move(e), MetricKind::pullback, "pullback(" + d.label() + ")",
                                     std::move(carrier), d.advertised_ultrametric());
}

/// Replaces each distance value k by levels[k]. levels[0] must be 0 and the rest positive.
inline MetricTable rescale_metric(const MetricTable& d, const std::vector<Distance>& levels) {
    if (levels.empty() || levels[0] != 0) throw std::invalid_argument("rescale: levels[0] must be 0");
    if (levels.size() <= d.max_distance()) throw std::invalid_argument("rescale: not enough levels for the distance values");
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i] == 0) throw std::invalid_argument("rescale: levels must be positive beyond 0");
    std::vector<Distance> e(d.entries().size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = levels[d.entries()[i]];
    return MetricTable::from_entries(d.size(), std::move(e), MetricKind::rescaled, "rescaled(" + d.label() + ")", d.group());
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

using Witness = std::array<Element, 3>;

struct MetricReport {
    bool axioms = true;              // d(x,x)=0, d(x,y)>0 for x!=y, symmetry
    bool triangle = true;
    bool ultrametric = true;
    bool bounded = true;             // entries <= carrier size
    std::optional<bool> right_invariant;
    std::optional<bool> left_invariant;
    std::optional<bool> subadditive; // informational
    std::optional<Witness> axiom_witness, triangle_witness, ultrametric_witness, bound_witness;
    std::optional<Witness> right_witness, left_witness, subadditive_witness;
    std::uint64_t pairs_checked = 0;
    std::uint64_t triples_checked = 0;

    bool is_metric() const { return axioms && triangle; }
};

/// Exhaustive check of every flag. Invariance flags are computed when a group is given
/// (or attached to the table) and its order matches.
inline MetricReport validate_metric(const MetricTable& d, std::optional<FiniteGroup> g = std::nullopt) {
    MetricReport r;
    if (!g) g = d.group();
    const std::size_t n = d.size();
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) {
            ++r.pairs_checked;
            const Distance v = d(x, y);
            const bool bad = (x == y) ? v != 0 : (v == 0 || v != d(y, x));
            if (bad && r.axioms) {
                r.axioms = false;
                r.axiom_witness = Witness{x, y, x};
            }
            if (v > n && r.bounded) {
                r.bounded = false;
                r.bound_witness = Witness{x, y, y};
            }
        }
    for (Element x = 0; x < n; ++x) {
        const auto rx = d.row(x);
        for (Element z = 0; z < n; ++z) {
            const Distance xz = rx[z];
            const auto rz = d.row(z);
            for (Element y = 0; y < n; ++y) {
                const Distance xy = rx[y], zy = rz[y];
                if (xy > xz + zy && r.triangle) {
                    r.triangle = false;
                    r.triangle_witness = Witness{x, y, z};
                }
                if (xy > std::max(xz, zy) && r.ultrametric) {
                    r.ultrametric = false;
                    r.ultrametric_witness = Witness{x, y, z};
                }
            }
        }
    }
    r.triples_checked = std::uint64_t(n) * n * n;
    if (g && g->order() == n) {
        r.right_invariant = true;
        r.left_invariant = true;
        r.subadditive = true;
        for (Element h = 0; h < n; ++h)
            for (Element x = 0; x < n; ++x) {
                const Element xh = g->op(x, h), hx = g->op(h, x);
                for (Element y = 0; y < n; ++y) {
                    const Distance v = d(x, y);
                    if (*r.right_invariant && d(xh, g->op(y, h)) != v) {
                        r.right_invariant = false;
                        r.right_witness = Witness{x, y, h};
                    }
                    if (*r.left_invariant && d(hx, g->op(h, y)) != v) {
                        r.left_invariant = false;
                        r.left_witness = Witness{x, y, h};
                    }
                }
            }
        const Element e = g->identity();
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y)
                if (*r.subadditive && d(g->op(x, y), e) > d(x, e) + d(y, e)) {
                    r.subadditive = false;
                    r.subadditive_witness = Witness{x, y, e};
                }
    }
    return r;
}

}  // namespace grpmetric

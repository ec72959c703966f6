#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "groups.hpp"
#include "maps.hpp"
#include "metrics.hpp"

namespace grpmetric {

inline constexpr std::size_t symmetry_search_bound = 12;
inline constexpr std::size_t exhaustive_search_bound = 10;

/// Distance-preserving permutations of a metric space.
struct SymmetryGroup {
    std::size_t degree = 0;
    std::vector<Permutation> elements;  // sorted by image array

    std::size_t order() const { return elements.size(); }
    bool contains(const Permutation& p) const { return std::binary_search(elements.begin(), elements.end(), p); }
    std::string to_json() const {
        std::string out = "[";
        for (std::size_t i = 0; i < elements.size(); ++i) out += (i ? ", [" : "[") + join_numbers(elements[i].image(), ", ") + "]";
        return out + "]";
    }
};

inline bool preserves(const Permutation& p, const MetricTable& d) {
    for (Element x = 0; x < d.size(); ++x)
        for (Element y = x + 1; y < d.size(); ++y)
            if (d(p(x), p(y)) != d(x, y)) return false;
    return true;
}

namespace detail {

inline void require_search_bound(const MetricTable& d, std::size_t bound, const char* what) {
    if (d.size() > bound) {
        throw std::length_error(std::string(what) + ": carrier " + std::to_string(d.size()) + " exceeds the search bound " +
                                std::to_string(bound));
    }
}

inline std::vector<std::vector<Distance>> row_profiles(const MetricTable& d) {
    std::vector<std::vector<Distance>> out(d.size());
    for (Element x = 0; x < d.size(); ++x) {
        const auto r = d.row(x);
        out[x].assign(r.begin(), r.end());
        std::sort(out[x].begin(), out[x].end());
    }
    return out;
}

/// Backtracking over maps x -> y (x ascending, y ascending) with d1(x, x') = d2(y, y')
/// for all placed x' and matching row profiles. Calls visit(image) for every complete map;
/// visit returns false to stop.
template <class Visit>
void isometry_backtrack(const MetricTable& d1, const MetricTable& d2, Visit&& visit) {
    const std::size_t n = d1.size();
    const auto p1 = row_profiles(d1);
    const auto p2 = row_profiles(d2);
    std::vector<Element> image(n, npos);
    std::vector<char> used(n, 0);
    bool stop = false;
    auto rec = [&](auto&& self, Element x) -> void {
        if (stop) return;
        if (x == n) {
            if (!visit(image)) stop = true;
            return;
        }
        for (Element y = 0; y < n && !stop; ++y) {
            if (used[y] || p1[x] != p2[y]) continue;
            bool ok = true;
            for (Element z = 0; z < x && ok; ++z) ok = d1(x, z) == d2(y, image[z]);
            if (!ok) continue;
            used[y] = 1;
            image[x] = y;
            self(self, x + 1);
            used[y] = 0;
            image[x] = npos;
        }
    };
    rec(rec, 0);
}

}  // namespace detail

/// All of Gamma(X,d) by pruned backtracking; carriers up to 12 points.
inline SymmetryGroup symmetry_group(const MetricTable& d) {
    detail::require_search_bound(d, symmetry_search_bound, "symmetry_group");
    SymmetryGroup g;
    g.degree = d.size();
    detail::isometry_backtrack(d, d, [&](const std::vector<Element>& img) {
        g.elements.emplace_back(img);
        return true;
    });
    std::sort(g.elements.begin(), g.elements.end());
    return g;
}

/// All of Gamma(X,d) by testing every permutation; used to certify the pruned search.
inline SymmetryGroup symmetry_group_exhaustive(const MetricTable& d) {
    detail::require_search_bound(d, exhaustive_search_bound, "symmetry_group_exhaustive");
    SymmetryGroup g;
    g.degree = d.size();
    std::vector<Element> img(d.size());
    std::iota(img.begin(), img.end(), Element{0});
    do {
        bool ok = true;
        for (Element x = 0; x < d.size() && ok; ++x)
            for (Element y = x + 1; y < d.size() && ok; ++y) ok = d(img[x], img[y]) == d(x, y);
        if (ok) g.elements.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return g;
}

/// Closure, identity and inverses of a permutation list; returns the failure, if any.
inline std::optional<std::string> permutation_group_defect(const std::vector<Permutation>& elems) {
    if (elems.empty()) return "empty";
    std::set<Permutation> set(elems.begin(), elems.end());
    if (!set.count(Permutation::identity(elems.front().size()))) return "missing identity";
    for (const auto& a : elems) {
        if (!set.count(a.inverse())) return "not closed under inverse";
        for (const auto& b : elems)
            if (!set.count(a * b)) return "not closed under composition";
    }
    return std::nullopt;
}

/// A distance-preserving |X|-cycle, if Gamma(X,d) has one.
inline std::optional<Permutation> has_cyclic_representation(const MetricTable& d) {
    for (const auto& p : symmetry_group(d).elements)
        if (p.is_full_cycle()) return p;
    return std::nullopt;
}

/// A regular action theta of G on X. theta[k] is the permutation of group element k and
/// phi(g) = theta[g](base).
struct RegularRepresentation {
    Element base = 0;
    std::vector<Element> phi;
    std::vector<Permutation> theta;
    /// theta sorted, for comparing representations as permutation groups.
    std::vector<Permutation> as_set() const {
        auto s = theta;
        std::sort(s.begin(), s.end());
        return s;
    }
};

/**
 * All regular subgroups of Gamma(X,d) on which G acts regularly, one entry per distinct
 * permutation group. Searches bijections phi: G -> X with phi(e) = 0 whose pullback is
 * left-invariant; theta_k = phi L_k phi^-1 is then a regular subgroup of Gamma.
 */
inline std::vector<RegularRepresentation> find_regular_subgroups(const MetricTable& d, const FiniteGroup& g) {
    detail::require_search_bound(d, symmetry_search_bound, "find_regular_subgroups");
    const std::size_t n = d.size();
    if (g.order() != n) {
        throw std::invalid_argument("group order " + std::to_string(g.order()) + " differs from the carrier " + std::to_string(n));
    }
    // Elements in assignment order, identity first.
    std::vector<Element> order{g.identity()};
    for (Element x = 0; x < n; ++x)
        if (x != g.identity()) order.push_back(x);
    std::vector<Element> phi(n, npos);
    std::vector<char> used(n, 0);
    std::set<std::vector<Permutation>> seen;
    std::vector<RegularRepresentation> out;
    const Element base = 0;

    auto consistent = [&](Element a) {
        // d(phi(x), phi(y)) = d(phi(e), phi(x^-1 y)) whenever all three are placed;
        // first with a as x or y, then with a as the quotient.
        for (Element x = 0; x < n; ++x) {
            if (phi[x] == npos) continue;
            for (Element y : {a, x}) {
                const Element other = y == a ? x : a;
                const Element q = g.op(g.inverse(y), other);
                if (phi[q] == npos) continue;
                if (d(phi[y], phi[other]) != d(base, phi[q])) return false;
            }
        }
        for (Element x = 0; x < n; ++x) {
            if (phi[x] == npos) continue;
            const Element y = g.op(x, a);
            if (phi[y] != npos && d(phi[x], phi[y]) != d(base, phi[a])) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == n) {
            RegularRepresentation r;
            r.base = base;
            r.phi = phi;
            std::vector<Element> inv(n);
            for (Element x = 0; x < n; ++x) inv[phi[x]] = x;
            for (Element h = 0; h < n; ++h) {
                std::vector<Element> img(n);
                for (Element p = 0; p < n; ++p) img[p] = phi[g.op(h, inv[p])];
                r.theta.emplace_back(std::move(img));
            }
            for (const auto& t : r.theta)
                if (!preserves(t, d)) throw std::logic_error("regular action leaves the symmetry group");
            if (seen.insert(r.as_set()).second) out.push_back(std::move(r));
            return;
        }
        const Element a = order[k];
        for (Element p = 0; p < n; ++p) {
            if (used[p]) continue;
            if (k == 0 && p != base) continue;
            phi[a] = p;
            used[p] = 1;
            if (consistent(a)) self(self, k + 1);
            used[p] = 0;
            phi[a] = npos;
        }
    };
    rec(rec, 0);
    return out;
}

struct TransferResult {
    FiniteGroup group;                 // on X, identity x0, x*y = g_y(x)
    MetricTable metric;                // d with the induced group attached
    std::vector<Element> phi;          // x -> index in R of the unique g_x with g_x(x0) = x
    std::vector<Permutation> regular;  // R as given
};

/**
 * Group structure on X from a regular subgroup R of Gamma(X,d): with g_y the element of R
 * sending x0 to y, set x*y = g_y(x). Composition in R is read left to right (first x, then y),
 * under which phi is an isomorphism. d is verified right-invariant for the new group.
 */
inline TransferResult transfer(const MetricTable& d, const std::vector<Permutation>& r, Element x0) {
    const std::size_t n = d.size();
    if (x0 >= n) throw std::out_of_range("base point outside the carrier");
    if (r.size() != n) throw std::invalid_argument("R is not regular: |R| != |X|");
    for (const auto& g : r) {
        if (g.size() != n) throw std::invalid_argument("R acts on a different set");
        if (!preserves(g, d)) throw std::invalid_argument("R is not contained in the symmetry group");
    }
    if (auto err = permutation_group_defect(r)) throw std::invalid_argument("R is not a group: " + *err);
    std::vector<Element> phi(n, npos);
    for (Element k = 0; k < n; ++k) {
        const Element y = r[k](x0);
        if (phi[y] != npos) throw std::invalid_argument("R is not regular: two elements send x0 to the same point");
        phi[y] = k;
    }
    std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) table[x][y] = r[phi[y]](x);
    FiniteGroup g = FiniteGroup::tabulated(table, "transfer");
    if (g.identity() != x0) throw std::logic_error("transferred group has the wrong identity");
    std::map<Permutation, Element> index;
    for (Element k = 0; k < n; ++k) index[r[k]] = k;
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            if (phi[g.op(x, y)] != index.at(r[phi[y]] * r[phi[x]])) throw std::logic_error("phi is not a homomorphism");
    MetricTable dg = d.with_group(g);
    if (detail::right_invariance_witness(g, dg)) throw std::logic_error("transferred metric is not right-invariant");
    return {g, dg, phi, r};
}

/// A distance-preserving bijection d1 -> d2, first found in ascending order, or nullopt.
/// Spaces whose multisets of sorted rows differ are rejected before any search.
inline std::optional<EmbeddingMap> search_isometry(const MetricTable& d1, const MetricTable& d2) {
    if (d1.size() != d2.size()) return std::nullopt;
    detail::require_search_bound(d1, symmetry_search_bound, "search_isometry");
    auto p1 = detail::row_profiles(d1), p2 = detail::row_profiles(d2);
    std::sort(p1.begin(), p1.end());
    std::sort(p2.begin(), p2.end());
    if (p1 != p2) return std::nullopt;
    std::optional<std::vector<Element>> found;
    detail::isometry_backtrack(d1, d2, [&](const std::vector<Element>& img) {
        found = img;
        return false;
    });
    if (!found) return std::nullopt;
    return EmbeddingMap::verified(EmbeddingKind::search, d1, d2, *found);
}

// ---------------------------------------------------------------------------
// Four-point fixtures, points x, y, w, z = 0, 1, 2, 3.
// ---------------------------------------------------------------------------

namespace fixtures {

inline MetricTable four_point(const char* label, Distance xy, Distance xw, Distance xz, Distance yw, Distance yz, Distance wz) {
    return MetricTable::from_matrix({{0, xy, xw, xz}, {xy, 0, yw, yz}, {xw, yw, 0, wz}, {xz, yz, wz, 0}},
                                    MetricKind::custom, label);
}

/// Cycle x-y-z-w-x with sides 1; the diagonals x-z and y-w have length 2.
inline MetricTable four_point_d1() { return four_point("fig-d1", 1, 1, 2, 2, 1, 1); }
/// Distance 2 on the pairs {x,y} and {w,z}, 1 elsewhere.
inline MetricTable four_point_d2() { return four_point("fig-d2", 2, 1, 1, 1, 1, 2); }
/// The three perfect matchings at distances 1, 2, 3.
inline MetricTable four_point_d3() { return four_point("fig-d3", 1, 3, 2, 2, 3, 1); }
/// A four-point metric with trivial symmetry group.
inline MetricTable four_point_rigid() { return four_point("rigid", 1, 1, 2, 2, 2, 3); }

}  // namespace fixtures

}  // namespace grpmetric

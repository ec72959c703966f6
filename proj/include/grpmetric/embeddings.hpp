#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "groups.hpp"
#include "maps.hpp"
#include "metrics.hpp"

namespace grpmetric {

// ---------------------------------------------------------------------------
// Generalized Gray maps Z_m -> H^n, H = <n>
// ---------------------------------------------------------------------------

struct PsiParams {
    std::size_t coordinate = 0;             // 0-based start coordinate i
    std::optional<Permutation> rho;         // n-cycle on coordinates; default (0 1 ... n-1)
    std::uint32_t unit = 1;                 // h = unit * n, unit coprime to m/n
};

/// Coordinate visiting order s_k = rho^k(i), k = 0..n-1.
inline std::vector<std::size_t> psi_coordinate_order(std::uint32_t n, const PsiParams& params) {
    Permutation rho = params.rho ? *params.rho : Permutation::from_cycles(n, {[&] {
        std::vector<Element> c(n);
        std::iota(c.begin(), c.end(), Element{0});
        return c;
    }()});
    if (rho.size() != n || !rho.is_full_cycle()) throw std::invalid_argument("rho must be a single n-cycle");
    if (params.coordinate >= n) throw std::invalid_argument("start coordinate out of range");
    std::vector<std::size_t> s(n);
    Element c = static_cast<Element>(params.coordinate);
    for (std::uint32_t k = 0; k < n; ++k, c = rho(c)) s[k] = c;
    return s;
}

/// Words of the map: image[t] = sum_{k<t} h e_{s_(k mod n)}, coordinates in Z_m encoding.
inline std::vector<Word> psi_words(std::uint32_t m, std::uint32_t n, const std::vector<std::size_t>& order, Element h) {
    std::vector<Word> words(m, Word(n, 0));
    for (std::uint32_t t = 1; t < m; ++t) {
        words[t] = words[t - 1];
        const std::size_t c = order[(t - 1) % n];
        words[t][c] = static_cast<Element>((words[t][c] + h) % m);
    }
    return words;
}

inline void require_psi_params(std::uint32_t m, std::uint32_t n) {
    if (m < 2 || n == 0 || m % n != 0) {
        throw std::invalid_argument("psi needs n | m, got m=" + std::to_string(m) + ", n=" + std::to_string(n));
    }
    if (n == m) throw std::invalid_argument("psi needs a proper divisor n < m (H = <m> is trivial)");
    require_carrier(m, "psi");
}

/// The isometric embedding (Z_m, d_n) -> (H^n, Hamming), with d_n the pullback metric.
inline WordEmbedding psi_embedding(std::uint32_t m, std::uint32_t n, const PsiParams& params = {}) {
    require_psi_params(m, n);
    const std::uint32_t k = m / n;
    if (params.unit == 0 || std::gcd(params.unit % k, k) != 1) {
        throw std::invalid_argument("unit " + std::to_string(params.unit) + " is not coprime to m/n = " + std::to_string(k));
    }
    const Element h = static_cast<Element>((std::uint64_t(params.unit) * n) % m);
    const auto order = psi_coordinate_order(n, params);
    auto words = psi_words(m, n, order, h);
    const FiniteGroup zm = FiniteGroup::cyclic(m);
    std::vector<Distance> e(std::size_t(m) * m);
    for (std::uint32_t x = 0; x < m; ++x)
        for (std::uint32_t y = 0; y < m; ++y) e[std::size_t(x) * m + y] = hamming_distance(words[x], words[y]);
    MetricTable src = MetricTable::from_entries(m, std::move(e), MetricKind::pullback,
                                                "psi(" + std::to_string(m) + "," + std::to_string(n) + ")", zm);
    return WordEmbedding::verified(EmbeddingKind::psi, std::move(src), zm, k, std::move(words));
}

/// d_n on Z_m with the canonical choices h = n, i = 0, rho = (0 1 ... n-1).
inline MetricTable psi_metric(std::uint32_t m, std::uint32_t n) { return psi_embedding(m, n).source(); }

inline std::uint64_t factorial(std::uint64_t n) {
    std::uint64_t f = 1;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (f > std::numeric_limits<std::uint64_t>::max() / i) throw std::overflow_error("factorial overflows 64 bits");
        f *= i;
    }
    return f;
}

/// phi(m/n) * n!: generator choices times coordinate orderings.
inline std::uint64_t psi_variant_count(std::uint64_t m, std::uint64_t n) {
    if (n == 0 || m % n != 0) throw std::invalid_argument("psi_variant_count needs n | m");
    const std::uint64_t f = factorial(n), p = euler_phi(m / n);
    if (f > std::numeric_limits<std::uint64_t>::max() / p) throw std::overflow_error("variant count overflows 64 bits");
    return p * f;
}

struct PsiVariantReport {
    std::uint64_t expected = 0;
    std::uint64_t checked = 0;
    bool agree = false;
    std::string witness;
};

/**
 * Builds every generator/ordering variant of the map and compares its full distance table
 * with the canonical one. Orderings are visited in plain-changes order, so consecutive
 * orderings differ by one adjacent transposition (positions j, j+1). That swap changes only
 * the prefix set of size j+1, hence only the words t with t mod n = j+1; those words are
 * rebuilt and their rows recompared, while every other row is literally unchanged.
 */
inline PsiVariantReport psi_variants_agree(std::uint32_t m, std::uint32_t n) {
    require_psi_params(m, n);
    PsiVariantReport rep;
    rep.expected = psi_variant_count(m, n);
    const MetricTable canon = psi_metric(m, n);
    const std::uint32_t k = m / n;
#if defined(__AVX2__)
    constexpr std::size_t lanes = 32;
#else
    constexpr std::size_t lanes = 16;
#endif
    using Vec = std::uint8_t __attribute__((vector_size(lanes)));
    const std::size_t chunks = (m + lanes - 1) / lanes;
    if (m > 255 || n > 255) throw std::length_error("psi_variants_agree supports m <= 255");

    // canon_rows[t][chunk] lane y = d(t, y); padding lanes are 0 and stay 0.
    std::vector<Vec> canon_rows(std::size_t(m) * chunks);
    for (std::uint32_t t = 0; t < m; ++t)
        for (std::uint32_t y = 0; y < m; ++y) canon_rows[t * chunks + y / lanes][y % lanes] = static_cast<std::uint8_t>(canon(t, y));

    for (std::uint32_t u = 1; u < k; ++u) {
        if (std::gcd(u, k) != 1) continue;
        const std::uint32_t h = (u * n) % m;
        std::vector<std::size_t> s(n);
        std::iota(s.begin(), s.end(), std::size_t{0});
        // col[c][chunk] lane t = coordinate c of word t; 255 in padding lanes never matches.
        std::vector<Vec> col(std::size_t(n) * chunks);
        for (auto& v : col)
            for (std::size_t l = 0; l < lanes; ++l) v[l] = 255;
        auto set_word = [&](std::uint32_t t) {
            const std::uint32_t a = t / n, b = t % n;
            for (std::uint32_t p = 0; p < n; ++p) {
                col[s[p] * chunks + t / lanes][t % lanes] = static_cast<std::uint8_t>(((a + (p < b ? 1 : 0)) * h) % m);
            }
        };
        auto set_coords = [&](std::uint32_t t, std::uint32_t p0, std::uint32_t p1) {
            const std::uint32_t a = t / n, b = t % n;
            for (std::uint32_t p : {p0, p1}) {
                col[s[p] * chunks + t / lanes][t % lanes] = static_cast<std::uint8_t>(((a + (p < b ? 1 : 0)) * h) % m);
            }
        };
        auto row_ok = [&](std::uint32_t t) {
            for (std::size_t ch = 0; ch < chunks; ++ch) {
                Vec acc{};
                for (std::uint32_t c = 0; c < n; ++c) {
                    const std::uint8_t v = col[c * chunks + t / lanes][t % lanes];
                    acc -= (Vec)(col[c * chunks + ch] != v);
                }
                if (ch == chunks - 1) {
                    for (std::size_t l = m - ch * lanes; l < lanes; ++l) acc[l] = 0;
                }
                const Vec diff = acc ^ canon_rows[t * chunks + ch];
                std::uint64_t any[lanes / 8];
                std::memcpy(any, &diff, sizeof(any));
                for (auto w : any)
                    if (w) return false;
            }
            return true;
        };
        auto fail = [&](const std::string& what) {
            rep.witness = "unit " + std::to_string(u) + ", ordering (" + join_numbers(s, " ") + "): " + what;
            return rep;
        };
        for (std::uint32_t t = 0; t < m; ++t) set_word(t);
        for (std::uint32_t t = 0; t < m; ++t)
            if (!row_ok(t)) return fail("row " + std::to_string(t) + " differs");
        ++rep.checked;

        // Plain changes (Johnson-Trotter) over the ordering s.
        std::vector<std::size_t> pos(n);
        std::vector<int> dir(n, -1);
        for (std::uint32_t p = 0; p < n; ++p) pos[s[p]] = p;
        while (true) {
            std::size_t mobile = n;
            for (std::size_t e = n; e-- > 0;) {
                const long q = static_cast<long>(pos[e]) + dir[e];
                if (q >= 0 && q < static_cast<long>(n) && s[q] < e) {
                    mobile = e;
                    break;
                }
            }
            if (mobile == n) break;
            const std::size_t p = pos[mobile], q = p + dir[mobile];
            std::swap(s[p], s[q]);
            pos[s[p]] = p;
            pos[s[q]] = q;
            for (std::size_t e = mobile + 1; e < n; ++e) dir[e] = -dir[e];
            // Word t = a n + b holds (a+1) h on the first b positions of s and a h elsewhere;
            // with b = min(p, q) + 1 only the two swapped coordinates change.
            const std::uint32_t b = static_cast<std::uint32_t>(std::min(p, q) + 1);
            for (std::uint32_t t = b; t < m; t += n) set_coords(t, b - 1, b);
            for (std::uint32_t t = b; t < m; t += n)
                if (!row_ok(t)) return fail("row " + std::to_string(t) + " differs");
            ++rep.checked;
        }
    }
    rep.agree = rep.checked == rep.expected;
    if (!rep.agree) rep.witness = "checked " + std::to_string(rep.checked) + " of " + std::to_string(rep.expected) + " variants";
    return rep;
}

// ---------------------------------------------------------------------------
// Base-q expansion
// ---------------------------------------------------------------------------

/// (Z_q^n, d_RT) -> (Z_{q^n}, d_q), (a_1..a_n) |-> a_1 q^(n-1) + ... + a_n. Use inverse() for
/// the q-base expansion.
inline EmbeddingMap base_q_isometry(std::uint32_t q, unsigned n) {
    const MetricTable rt = rt_metric(q, n);
    const MetricTable qa = qadic_metric(q, n);
    const FiniteGroup& g = *rt.group();
    std::vector<Element> img(g.order());
    for (Element x = 0; x < g.order(); ++x) {
        std::uint64_t v = 0;
        for (Element a : g.coordinates(x)) v = v * q + a;
        img[x] = static_cast<Element>(v);
    }
    return EmbeddingMap::verified(EmbeddingKind::base_q, rt, qa, std::move(img));
}

// ---------------------------------------------------------------------------
// Lifting an isometry of subgroups to the extended metrics
// ---------------------------------------------------------------------------

namespace detail {

/// The ambient subgroup as a group, reusing the parent when it is the whole group.
inline FiniteGroup ambient_group(const Subgroup& k) {
    return k.order() == k.parent().order() ? k.parent() : k.as_group();
}

/// H < K re-expressed inside ambient_group(K).
inline Subgroup relative_subgroup(const Subgroup& h, const Subgroup& k, const FiniteGroup& kg) {
    std::vector<Element> pos;
    for (Element x : h.elements()) pos.push_back(k.position(x));
    return Subgroup::from_elements(kg, pos);
}

}  // namespace detail

/**
 * eta(h g_j) = tau(h) rho(g_j) from a verified isometry tau: (H1, d1) -> (H2, d2) and right
 * transversals T1 of H1 in K1, T2 of H2 in K2. rho[j] is the coset index in T2 assigned to
 * coset j of T1. Points of K1, K2 are positions in their sorted element lists, which are the
 * group elements themselves when K is the whole group. The result is verified as an
 * isometry (K1, Ext d1) -> (K2, Ext d2).
 */
inline EmbeddingMap eta_extension(const EmbeddingMap& tau, const Transversal& t1, const Transversal& t2,
                                  const std::vector<std::size_t>& rho) {
    const Subgroup& h1 = t1.subgroup();
    const Subgroup& h2 = t2.subgroup();
    const Subgroup& k1 = t1.ambient();
    const Subgroup& k2 = t2.ambient();
    if (k1.order() != k2.order()) throw std::invalid_argument("eta: ambient groups have different orders");
    if (h1.order() != h2.order()) throw std::invalid_argument("eta: subgroups have different orders");
    if (tau.source().size() != h1.order() || tau.target().size() != h2.order() || !tau.is_bijective()) {
        throw std::invalid_argument("eta: tau must be a bijection H1 -> H2");
    }
    if (rho.size() != t1.size()) throw std::invalid_argument("eta: rho must assign every coset of T1");
    std::vector<char> hit(t2.size(), 0);
    for (std::size_t j : rho) {
        if (j >= t2.size() || hit[j]) throw std::invalid_argument("eta: rho is not a bijection T1 -> T2");
        hit[j] = 1;
    }
    const FiniteGroup& g2 = h2.parent();
    std::vector<Element> img(k1.order());
    for (Element x : k1.elements()) {
        const auto [h, j] = t1.decompose(x);
        const Element th = h2.elements()[tau(h1.position(h))];
        img[k1.position(x)] = k2.position(g2.op(th, t2.representatives()[rho[j]]));
    }
    const FiniteGroup kg1 = detail::ambient_group(k1), kg2 = detail::ambient_group(k2);
    const MetricTable e1 = extend_metric(kg1, detail::relative_subgroup(h1, k1, kg1), tau.source());
    const MetricTable e2 = extend_metric(kg2, detail::relative_subgroup(h2, k2, kg2), tau.target());
    return EmbeddingMap::verified(EmbeddingKind::eta, e1, e2, std::move(img));
}

inline std::vector<std::size_t> identity_assignment(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

struct GaugeCheck {
    bool ok = false;
    Permutation f;  // eta_rho o eta_rho'^-1 on K2
};

/// Two liftings of the same tau differ by a symmetry of the extended target metric.
inline GaugeCheck eta_gauge_check(const EmbeddingMap& tau, const Transversal& t1, const Transversal& t2,
                                  const std::vector<std::size_t>& rho, const std::vector<std::size_t>& rho_prime) {
    const EmbeddingMap a = eta_extension(tau, t1, t2, rho);
    const EmbeddingMap b = eta_extension(tau, t1, t2, rho_prime);
    std::vector<Element> binv(b.image().size());
    for (Element x = 0; x < binv.size(); ++x) binv[b(x)] = x;
    std::vector<Element> f(binv.size());
    for (Element y = 0; y < f.size(); ++y) f[y] = a(binv[y]);
    GaugeCheck r;
    r.f = Permutation(f);
    r.ok = true;
    const MetricTable& d2 = a.target();
    for (Element x = 0; x < f.size() && r.ok; ++x)
        for (Element y = x + 1; y < f.size() && r.ok; ++y) r.ok = d2(f[x], f[y]) == d2(x, y);
    return r;
}

// ---------------------------------------------------------------------------
// Chain isometries onto block RT spaces
// ---------------------------------------------------------------------------

struct ChainIsometry {
    EmbeddingMap map;                  // (G, d_C) -> (H^e, d_BRT)
    FiniteGroup alphabet;              // H as a group in its own right
    std::size_t exponent = 0;          // e = log_|H| |G|
    std::vector<std::size_t> partition;
    std::vector<std::size_t> exponents;  // e_i with |H_i| = |H|^e_i
};

namespace detail {

inline FiniteGroup alphabet_of(const Subgroup& h) {
    FiniteGroup a = h.as_group();
    const FiniteGroup z = FiniteGroup::cyclic(static_cast<std::uint32_t>(h.order()));
    return a.same_table(z) ? z : a;
}

}  // namespace detail

/**
 * (G, d_C) -> (H^e, d_BRT) for a chain whose term orders are all powers of |H_1| = |H|.
 * Built by lifting along H_1 < H_2 < ... with H'_i = H^(e_i) x {e}^(e - e_i), canonical
 * transversals and order-preserving coset assignment; every step is verified.
 */
inline ChainIsometry chain_isometry(const SubgroupChain& chain) {
    if (chain.length() < 1) throw std::invalid_argument("chain_isometry needs a chain of length >= 1");
    const Subgroup& h = chain[1];
    const std::size_t q = h.order();
    std::vector<std::size_t> ex;
    for (const auto& t : chain.terms()) {
        const int e = exact_log(t.order(), q);
        if (e < 0) {
            throw std::invalid_argument("chain is not graded by |H_1| = " + std::to_string(q) + ": term of order " +
                                        std::to_string(t.order()));
        }
        ex.push_back(static_cast<std::size_t>(e));
    }
    const std::size_t e = ex.back();
    std::vector<std::size_t> partition;
    for (std::size_t i = 1; i < ex.size(); ++i) partition.push_back(ex[i] - ex[i - 1]);

    const FiniteGroup alpha = detail::alphabet_of(h);
    const FiniteGroup target = FiniteGroup::power(alpha, e);
    // H'_i: elements whose coordinates beyond e_i are the identity.
    auto lifted = [&](std::size_t ei) {
        std::vector<Element> elems;
        for (Element x = 0; x < target.order(); ++x) {
            const auto c = target.coordinates(x);
            bool ok = true;
            for (std::size_t j = ei; j < e && ok; ++j) ok = c[j] == alpha.identity();
            if (ok) elems.push_back(x);
        }
        return Subgroup::from_elements(target, elems);
    };

    // Step 1: H_1 -> H'_1 by position, both with the discrete metric.
    Subgroup hp = lifted(1);
    EmbeddingMap step = EmbeddingMap::verified(EmbeddingKind::chain_iso, discrete_metric(h.as_group()),
                                               discrete_metric(hp.as_group()), identity_image(h.order()));
    Subgroup prev_src = h, prev_tgt = hp;
    for (std::size_t i = 2; i <= chain.length(); ++i) {
        const Subgroup next_tgt = lifted(ex[i]);
        const Transversal t1 = transversal(prev_src, chain[i]);
        const Transversal t2 = transversal(prev_tgt, next_tgt);
        step = eta_extension(step, t1, t2, identity_assignment(t1.size()));
        prev_src = chain[i];
        prev_tgt = next_tgt;
    }
    const MetricTable src = chain_metric(chain);
    const MetricTable tgt = brt_metric(alpha, partition);
    return {EmbeddingMap::verified(EmbeddingKind::chain_iso, src, tgt, step.image()), alpha, e, partition, ex};
}

/// Geometric chain of index q, giving (G, d_C) -> (H^n, d_RT).
inline ChainIsometry geometric_chain_isometry(const FiniteGroup& g, std::uint64_t q) {
    return chain_isometry(geometric_chain(g, q));
}

// ---------------------------------------------------------------------------
// First-order Reed-Muller encoding of Z_{p^n}
// ---------------------------------------------------------------------------

inline void require_rm1(std::uint32_t p, unsigned n) {
    if (!is_prime(p)) throw std::invalid_argument("rm1 needs a prime p, got " + std::to_string(p));
    if (n < 2) throw std::invalid_argument("rm1 needs n >= 2");
    if (saturating_pow(p, n - 1) > 1024) throw std::length_error("rm1 word length p^(n-1) exceeds 1024");
    require_carrier(saturating_pow(p, n), "rm1");
}

/// n x p^(n-1) generator over Z_p: the all-ones row, then z_1..z_(n-1) for the evaluation
/// points z in Z_p^(n-1), mixed radix ascending (leftmost coordinate most significant).
inline std::vector<std::vector<Element>> rm1_generator_matrix(std::uint32_t p, unsigned n) {
    require_rm1(p, n);
    const std::size_t len = checked_pow(p, n - 1);
    std::vector<std::vector<Element>> rows(n, std::vector<Element>(len, 1));
    for (std::size_t j = 0; j < len; ++j) {
        std::size_t rest = j;
        for (unsigned k = n - 1; k >= 1; --k) {
            rows[k][j] = static_cast<Element>(rest % p);
            rest /= p;
        }
    }
    return rows;
}

/// The rescaling taking chain weights (0, 1, 2) to the homogeneous weights.
inline std::vector<Distance> homogeneous_levels(std::uint32_t p, unsigned n) {
    return {0, static_cast<Distance>(checked_pow(p, n - 1)), static_cast<Distance>(checked_pow(p, n - 2) * (p - 1))};
}

/// a |-> a G over Z_p, as an isometric embedding of (Z_p^n, rescaled BRT(1, n-1)) into Hamming space.
inline WordEmbedding rm1_evaluation(std::uint32_t p, unsigned n) {
    const auto gen = rm1_generator_matrix(p, n);
    const FiniteGroup zp = FiniteGroup::cyclic(p);
    const MetricTable src = rescale_metric(brt_metric(zp, {1, n - 1}), homogeneous_levels(p, n));
    const FiniteGroup& g = *src.group();
    const std::size_t len = gen.front().size();
    std::vector<Word> words(g.order(), Word(len, 0));
    for (Element x = 0; x < g.order(); ++x) {
        const auto a = g.coordinates(x);
        for (std::size_t j = 0; j < len; ++j) {
            std::uint64_t v = 0;
            for (unsigned k = 0; k < n; ++k) v += std::uint64_t(a[k]) * gen[k][j];
            words[x][j] = static_cast<Element>(v % p);
        }
    }
    return WordEmbedding::verified(EmbeddingKind::rm1, src, zp, p, std::move(words));
}

/// g o f for a dense isometry f followed by a word embedding g.
inline WordEmbedding compose(const EmbeddingMap& f, const WordEmbedding& g, EmbeddingKind kind = EmbeddingKind::composed) {
    if (!f.target().same_entries(g.source())) {
        throw std::invalid_argument("compose: target of the first map is not the source of the second");
    }
    std::vector<Word> words;
    words.reserve(f.image().size());
    for (Element x = 0; x < f.image().size(); ++x) words.push_back(g(f(x)));
    return WordEmbedding::verified(kind, f.source(), g.alphabet(), g.alphabet_size(), std::move(words));
}

struct Rm1Construction {
    ChainIsometry chain;            // Z_{p^n} -> Z_p x Z_p^(n-1), partition (1, n-1)
    EmbeddingMap rescaled;          // (Z_{p^n}, d_Hom) -> (Z_p^n, rescaled BRT)
    WordEmbedding evaluation;       // (Z_p^n, rescaled BRT) -> Hamming space
    WordEmbedding embedding;        // (Z_{p^n}, d_Hom) -> (Z_p^(p^(n-1)), Hamming)
};

inline Rm1Construction rm1_construction(std::uint32_t p, unsigned n) {
    require_rm1(p, n);
    const FiniteGroup g = FiniteGroup::cyclic(static_cast<std::uint32_t>(checked_pow(p, n)));
    const auto top = static_cast<std::size_t>(checked_pow(p, n - 1));
    auto chain = chain_with_orders(g, {1, p, g.order()});
    if (!chain) throw std::logic_error("no two-step chain in " + g.name());
    std::vector<Element> bottom;
    for (std::size_t k = 0; k < p; ++k) bottom.push_back(static_cast<Element>(k * top));
    if ((*chain)[1].elements() != bottom) throw std::logic_error("first chain term is not p^(n-1) Z");
    ChainIsometry ci = chain_isometry(*chain);
    const auto levels = homogeneous_levels(p, n);
    const MetricTable hom = homogeneous_metric(p, n);
    const MetricTable src = rescale_metric(ci.map.source(), levels);
    if (!src.same_entries(hom)) throw std::logic_error("rescaled chain metric differs from the homogeneous metric");
    EmbeddingMap rescaled = EmbeddingMap::verified(EmbeddingKind::chain_iso, hom, rescale_metric(ci.map.target(), levels),
                                                   ci.map.image());
    WordEmbedding ev = rm1_evaluation(p, n);
    WordEmbedding emb = compose(rescaled, ev, EmbeddingKind::rm1);
    return {std::move(ci), std::move(rescaled), std::move(ev), std::move(emb)};
}

/// (Z_{p^n}, d_Hom) -> (Z_p^(p^(n-1)), Hamming).
inline WordEmbedding rm1_embedding(std::uint32_t p, unsigned n) { return rm1_construction(p, n).embedding; }

}  // namespace grpmetric

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "embeddings.hpp"
#include "groups.hpp"
#include "isometry.hpp"
#include "metrics.hpp"
#include "weights.hpp"

namespace grpmetric {

enum class CheckStatus { pass, fail, error };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::error: return "error";
    }
    return "error";
}

using CheckParams = std::map<std::string, std::string>;

struct VerificationReport {
    std::string check;
    CheckParams params;
    CheckStatus status = CheckStatus::error;
    std::optional<std::string> witness;  // always set on fail
    std::uint64_t pairs_checked = 0;
    std::uint64_t triples_checked = 0;
    std::vector<std::string> notes;
    double elapsed_ms = 0;
};

namespace detail {

/// Accumulates counts and the first failure of a check.
class CheckContext {
public:
    explicit CheckContext(VerificationReport& r) : r_(r) {}
    void pairs(std::uint64_t n) { r_.pairs_checked += n; }
    void triples(std::uint64_t n) { r_.triples_checked += n; }
    void note(std::string s) { r_.notes.push_back(std::move(s)); }
    /// Records a failure unless one is already recorded; returns cond.
    bool expect(bool cond, const std::string& witness) {
        if (!cond && !failed_) {
            failed_ = true;
            r_.witness = witness;
        }
        return cond;
    }
    template <class T>
    bool expect_eq(const T& got, const T& want, const std::string& what) {
        return expect(got == want, what);
    }
    bool expect_poly(const EnumeratorPolynomial& got, const std::string& want, const std::string& what) {
        return expect(got.to_string() == want, what + ": got " + got.to_string() + ", expected " + want);
    }
    bool failed() const { return failed_; }

private:
    VerificationReport& r_;
    bool failed_ = false;
};

inline long long param_int(const CheckParams& p, const std::string& key, long long fallback) {
    auto it = p.find(key);
    if (it == p.end() || it->second.empty()) return fallback;
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(it->second, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != it->second.size()) throw std::invalid_argument("parameter --" + key + " must be an integer");
    return v;
}

inline std::optional<long long> param_opt(const CheckParams& p, const std::string& key) {
    if (!p.count(key) || p.at(key).empty()) return std::nullopt;
    return param_int(p, key, 0);
}

inline std::string row_string(const std::vector<Distance>& w) { return join_numbers(w, " "); }

inline std::vector<Distance> weights_of(const MetricTable& d) { return weight_function(d).values; }

inline std::vector<std::size_t> parse_orders(const std::string& s) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t bar = s.find('|', start);
        const std::string tok = s.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("malformed chain order list '" + s + "'");
        }
        out.push_back(std::stoull(tok));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return out;
}

inline std::uint64_t smallest_prime_factor(std::uint64_t n) {
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return p;
    return n;
}

inline const std::vector<std::string>& order_eight_groups() {
    static const std::vector<std::string> g{"Z8", "Z2^3", "Z2 x Z4", "D4", "Q8"};
    return g;
}

inline const std::vector<std::string>& small_prime_power_groups() {
    static const std::vector<std::string> g{"Z4",   "Z2^2", "Z8",  "Z2^3", "Z2 x Z4", "D4",   "Q8",   "Z9",
                                            "Z3^2", "Z16",  "Z2^4", "Z4^2", "D8",     "Q16",  "Z27",  "Z3^3",
                                            "Z3 x Z9", "Z25", "Z5^2", "Z32", "Z2^5"};
    return g;
}

/// Hamming^2 on a Klein four subgroup {e, a, b, ab}: w(a) = w(b) = 1, w(ab) = 2, with a < b the
/// two smallest involutions.
inline MetricTable hamming2_on_klein(const Subgroup& h) {
    const FiniteGroup& g = h.parent();
    if (h.order() != 4) throw std::invalid_argument("not a Klein four subgroup");
    std::vector<Element> inv;
    for (Element x : h.elements())
        if (x != g.identity()) {
            if (element_order(g, x) != 2) throw std::invalid_argument("not a Klein four subgroup");
            inv.push_back(x);
        }
    std::vector<Distance> w(4, 0);
    w[h.position(inv[0])] = 1;
    w[h.position(inv[1])] = 1;
    w[h.position(g.op(inv[0], inv[1]))] = 2;
    return MetricTable::from_group_weight(h.as_group(), w, MetricKind::hamming, "hamming^2(klein)");
}

inline std::optional<Subgroup> smallest_with(const FiniteGroup& g, std::size_t order, bool cyclic) {
    for (auto& s : enumerate_subgroups(g)) {
        if (s.order() != order) continue;
        bool is_cyc = false;
        for (Element x : s.elements()) is_cyc = is_cyc || element_order(g, x) == order;
        if (is_cyc == cyclic) return s;
    }
    return std::nullopt;
}

/// eta from the discrete metrics on two subgroups of equal order, identity on positions.
inline EmbeddingMap discrete_eta(const Subgroup& h1, const Subgroup& h2) {
    const EmbeddingMap tau = EmbeddingMap::verified(EmbeddingKind::custom, discrete_metric(h1.as_group()),
                                                    discrete_metric(h2.as_group()), identity_image(h1.order()));
    const Transversal t1 = transversal(h1.parent(), h1), t2 = transversal(h2.parent(), h2);
    return eta_extension(tau, t1, t2, identity_assignment(t1.size()));
}

// --- individual checks ------------------------------------------------------

inline void check_thm_4_4(const CheckParams& p, CheckContext& c) {
    const auto m_opt = param_opt(p, "m");
    const auto n_opt = param_opt(p, "n");
    const bool variants = p.count("variants") && p.at("variants") != "0";
    const long long lo = m_opt ? *m_opt : 2, hi = m_opt ? *m_opt : 60;
    for (long long m = lo; m <= hi; ++m) {
        for (long long n = 1; n < m; ++n) {
            if (m % n != 0 || (n_opt && *n_opt != n)) continue;
            const auto e = psi_embedding(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n));
            c.pairs(e.pairs_checked());
            for (std::uint32_t t = 0; t < m; ++t) {
                if (!c.expect(e.weight(t) == psi_weight(m, n, t), "m=" + std::to_string(m) + " n=" + std::to_string(n) +
                                                                       " t=" + std::to_string(t) + ": weight " +
                                                                       std::to_string(e.weight(t)) + " vs closed form " +
                                                                       std::to_string(psi_weight(m, n, t))))
                    return;
            }
            if (variants && m <= 24) {
                const auto r = psi_variants_agree(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n));
                c.pairs(r.checked * std::uint64_t(m) * (m - 1) / 2);
                if (!c.expect(r.agree, "m=" + std::to_string(m) + " n=" + std::to_string(n) + ": " + r.witness)) return;
            }
        }
    }
    if (n_opt && m_opt && (*n_opt >= *m_opt || *m_opt % *n_opt != 0)) {
        throw std::invalid_argument("--n must be a proper divisor of --m");
    }
}

inline void check_thm_5_2(const CheckParams& p, CheckContext& c) {
    const auto q = static_cast<std::uint32_t>(param_int(p, "q", 2));
    const auto n = static_cast<unsigned>(param_int(p, "n", 3));
    const EmbeddingMap f = base_q_isometry(q, n);
    c.pairs(f.pairs_checked());
    const EmbeddingMap inv = f.inverse();
    for (Element x = 0; x < f.image().size(); ++x)
        if (!c.expect(inv(f(x)) == x, "inverse fails at " + std::to_string(x))) return;
    const auto want = geometric_enumerator(q, n).to_string();
    c.expect_poly(weight_enumerator(f.target()), want, "q-adic enumerator");
    c.expect_poly(weight_enumerator(f.source()), want, "RT enumerator");
}

inline void check_thm_6_1(const CheckParams& p, CheckContext& c) {
    std::vector<std::string> groups = order_eight_groups();
    if (p.count("g1") || p.count("g2")) {
        if (!p.count("g1") || !p.count("g2")) throw std::invalid_argument("--g1 and --g2 go together");
        groups = {p.at("g1"), p.at("g2")};
    }
    const auto h = static_cast<std::size_t>(param_int(p, "h", 2));
    for (std::size_t i = 0; i < groups.size(); ++i)
        for (std::size_t j = (groups.size() == 2 ? 1 : 0); j < groups.size(); ++j) {
            if (groups.size() != 2 && i == j) continue;
            const FiniteGroup g1 = make_group(groups[i]), g2 = make_group(groups[j]);
            if (g1.order() != g2.order()) throw std::invalid_argument("groups must have equal order");
            const auto h1 = smallest_subgroup_of_order(g1, h), h2 = smallest_subgroup_of_order(g2, h);
            if (!h1 || !h2) throw std::invalid_argument("no subgroup of order " + std::to_string(h));
            const EmbeddingMap eta = discrete_eta(*h1, *h2);
            c.pairs(eta.pairs_checked());
            EnumeratorPolynomial want;
            want.add(0, 1).add(1, h - 1).add(2, g1.order() - h);
            if (h == g1.order()) want = EnumeratorPolynomial({1, g1.order() - 1});
            const std::string tag = groups[i] + " -> " + groups[j];
            if (!c.expect_poly(weight_enumerator(eta.source()), want.to_string(), tag + " source")) return;
            if (!c.expect_poly(weight_enumerator(eta.target()), want.to_string(), tag + " target")) return;
            if (!c.expect(eta(g1.identity()) == g2.identity(), tag + ": identity not preserved")) return;
        }
}

inline void check_geometric(const CheckParams& p, CheckContext& c, bool prime_alphabet) {
    std::vector<std::string> groups = small_prime_power_groups();
    if (p.count("group")) groups = {p.at("group")};
    for (const auto& spec : groups) {
        const FiniteGroup g = make_group(spec);
        const std::uint64_t q = param_opt(p, "q") ? static_cast<std::uint64_t>(*param_opt(p, "q")) : smallest_prime_factor(g.order());
        if (prime_alphabet && !is_prime(q)) throw std::invalid_argument("q must be prime");
        const int n = exact_log(g.order(), q);
        if (n < 1) throw std::invalid_argument(spec + " does not have order a power of " + std::to_string(q));
        const SubgroupChain chain = geometric_chain(g, q);
        const auto rep = validate_chain(chain);
        c.pairs(chain.terms().size());
        if (!c.expect(rep.valid, spec + ": geometric chain invalid")) return;
        for (std::size_t r : rep.indices)
            if (!c.expect(r == q, spec + ": chain index " + std::to_string(r) + " != " + std::to_string(q))) return;
        const ChainIsometry ci = chain_isometry(chain);
        c.pairs(ci.map.pairs_checked());
        if (!c.expect(ci.partition == std::vector<std::size_t>(n, 1), spec + ": partition is not unit")) return;
        const MetricTable rt = prime_alphabet ? rt_metric(static_cast<std::uint32_t>(q), n) : rt_metric(ci.alphabet, n);
        if (!c.expect(ci.map.target().same_entries(rt), spec + ": target is not the RT metric")) return;
        const auto want = geometric_enumerator(q, n).to_string();
        if (!c.expect_poly(weight_enumerator(ci.map.source()), want, spec + " chain enumerator")) return;
    }
}

inline void check_thm_8_2(const CheckParams& p, CheckContext& c) {
    struct Case {
        std::string group;
        std::vector<std::size_t> orders;  // empty: geometric chain of index 2
        std::vector<std::size_t> partition;
    };
    std::vector<Case> cases;
    if (p.count("group")) {
        const FiniteGroup g = make_group(p.at("group"));
        cases.push_back({p.at("group"), p.count("orders") ? parse_orders(p.at("orders")) : std::vector<std::size_t>{}, {}});
    } else {
        cases = {{"Z8", {}, {1, 1, 1}},     {"Z4", {1, 2, 4}, {1, 1}},     {"Z8", {1, 2, 8}, {1, 2}},
                 {"Z9", {1, 3, 9}, {1, 1}}, {"Z27", {1, 3, 27}, {1, 2}},   {"D4", {}, {1, 1, 1}},
                 {"Q8", {}, {1, 1, 1}},     {"Z16", {1, 4, 16}, {1, 1}},   {"Z2^4", {1, 2, 8, 16}, {1, 2, 1}}};
    }
    for (const auto& cs : cases) {
        const FiniteGroup g = make_group(cs.group);
        std::optional<SubgroupChain> chain;
        if (cs.orders.empty()) {
            chain = geometric_chain(g, smallest_prime_factor(g.order()));
        } else {
            chain = chain_with_orders(g, cs.orders);
        }
        if (!chain) throw std::invalid_argument(cs.group + ": no chain with orders " + join_numbers(cs.orders, "|"));
        const ChainIsometry ci = chain_isometry(*chain);
        c.pairs(ci.map.pairs_checked());
        const std::string tag = cs.group + " [" + join_numbers(chain->orders(), "|") + "]";
        if (!cs.partition.empty() && !c.expect(ci.partition == cs.partition, tag + ": partition " + join_numbers(ci.partition, "+"))) return;
        c.note(tag + " -> " + ci.alphabet.name() + "^" + std::to_string(ci.exponent) + " partition " + join_numbers(ci.partition, "+"));
    }
    if (!p.count("group")) {
        for (auto [pr, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
            const auto rm = rm1_construction(pr, n);
            c.pairs(rm.rescaled.pairs_checked());
            const std::string tag = "homogeneous p=" + std::to_string(pr) + " n=" + std::to_string(n);
            const auto& hom = rm.rescaled.source();
            for (Element x = 0; x < hom.size(); ++x)
                if (!c.expect(hom(x, 0) == homogeneous_weight(pr, n, x), tag + " at " + std::to_string(x))) return;
        }
    }
}

inline void check_prop_3_3(const CheckParams& p, CheckContext& c) {
    const auto pr = static_cast<std::uint32_t>(param_int(p, "p", 2));
    const auto n = static_cast<unsigned>(param_int(p, "n", 3));
    if (!is_prime(pr)) throw std::invalid_argument("--p must be prime");
    const FiniteGroup g = FiniteGroup::power(FiniteGroup::cyclic(pr), n);
    const MetricTable d = hamming_metric(g);
    const SymmetryGroup gamma = symmetry_group(d);
    c.pairs(gamma.order() * std::uint64_t(d.size()) * (d.size() - 1) / 2);
    const std::uint64_t want = checked_pow(factorial(pr), n) * factorial(n);
    c.expect(gamma.order() == want, "|Gamma| = " + std::to_string(gamma.order()) + ", expected " + std::to_string(want));
    std::optional<Permutation> cycle;
    for (const auto& s : gamma.elements)
        if (s.is_full_cycle()) {
            cycle = s;
            break;
        }
    const bool predicted = pr == 2 && n == 2;
    if (cycle) c.note("full cycle " + cycle->to_cycle_string());
    c.expect(cycle.has_value() == predicted,
             cycle ? "unexpected full cycle " + cycle->to_cycle_string() : std::string("no full cycle, expected one"));
}

inline void check_rem_7_2(const CheckParams& p, CheckContext& c) {
    const auto q_opt = param_opt(p, "q");
    const auto n_opt = param_opt(p, "n");
    for (long long q = q_opt.value_or(2); q <= q_opt.value_or(4); ++q)
        for (long long n = n_opt.value_or(1); n <= n_opt.value_or(4); ++n) {
            const FiniteGroup z = FiniteGroup::cyclic(static_cast<std::uint32_t>(checked_pow(q, n)));
            std::vector<std::size_t> orders;
            for (long long i = 0; i <= n; ++i) orders.push_back(checked_pow(q, i));
            const auto div_chain = chain_with_orders(z, orders);
            const std::string tag = "q=" + std::to_string(q) + " n=" + std::to_string(n);
            c.pairs(z.order() * z.order());
            if (!c.expect(chain_metric(*div_chain).same_entries(qadic_metric(q, n)), tag + ": divisor chain != q-adic")) return;
            const FiniteGroup prod = FiniteGroup::power(FiniteGroup::cyclic(static_cast<std::uint32_t>(q)), n);
            c.pairs(prod.order() * prod.order());
            if (!c.expect(chain_metric(coordinate_chain(prod)).same_entries(rt_metric(q, n)), tag + ": coordinate chain != RT")) return;
        }
}

inline void check_ex_4_8(const CheckParams&, CheckContext& c) {
    const std::vector<std::pair<unsigned, std::string>> rows = {
        {6, "0 1 2 3 4 5 6 5 4 3 2 1"}, {4, "0 1 2 3 4 4 4 4 4 3 2 1"}, {3, "0 1 2 3 3 3 3 3 3 3 2 1"}, {2, "0 1 2 2 2 2 2 2 2 2 2 1"}};
    const std::vector<std::string> polys = {"t^6 + 2t^5 + 2t^4 + 2t^3 + 2t^2 + 2t + 1", "5t^4 + 2t^3 + 2t^2 + 2t + 1",
                                            "7t^3 + 2t^2 + 2t + 1", "9t^2 + 2t + 1"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto e = psi_embedding(12, rows[i].first);
        c.pairs(e.pairs_checked());
        const std::string tag = "w_" + std::to_string(i + 1) + " (n=" + std::to_string(rows[i].first) + ")";
        c.expect(row_string(weights_of(e.source())) == rows[i].second, tag + ": " + row_string(weights_of(e.source())));
        c.expect_poly(weight_enumerator(e.source()), polys[i], tag);
    }
    c.expect(weights_of(psi_metric(12, 6)) == weights_of(lee_metric(12)), "w_1 is not the Lee weight");
}

inline void check_ex_5_3(const CheckParams&, CheckContext& c) {
    const MetricTable qa = qadic_metric(2, 3);
    c.expect(row_string(weights_of(qa)) == "0 3 2 3 1 3 2 3", "w_2 = " + row_string(weights_of(qa)));
    const MetricTable rt = rt_metric(2, 3);
    const FiniteGroup& g = *rt.group();
    for (Element x = 1; x < g.order(); ++x) {
        const auto cc = g.coordinates(x);
        const Distance want = cc[2] ? 3 : (cc[1] ? 2 : 1);
        c.expect(rt(x, 0) == want, "RT weight of " + g.label(x));
    }
    c.expect_poly(weight_enumerator(qa), "4t^3 + 2t^2 + t + 1", "q-adic enumerator");
    c.expect_poly(weight_enumerator(rt), "4t^3 + 2t^2 + t + 1", "RT enumerator");
    const EmbeddingMap f = base_q_isometry(2, 3);
    c.pairs(f.pairs_checked());
    const ChainIsometry ci = chain_isometry(geometric_chain(FiniteGroup::cyclic(8), 2));
    c.pairs(ci.map.pairs_checked());
    c.expect(ci.map.source().same_entries(qa) && ci.map.target().same_entries(rt), "chain isometry is not (d_2, d_RT)");
}

inline void check_ex_6_5(const CheckParams&, CheckContext& c) {
    const FiniteGroup z6 = FiniteGroup::cyclic(6), s3 = FiniteGroup::dihedral(3);
    const auto ext = [&](const FiniteGroup& g, std::initializer_list<Element> gens) {
        const Subgroup h = subgroup_generated(g, gens);
        return extend_metric(g, h, discrete_metric(h.as_group()));
    };
    c.expect(row_string(weights_of(hamming_metric(z6))) == "0 1 1 1 1 1", "w_Ham on Z6");
    c.expect(row_string(weights_of(ext(z6, {3}))) == "0 2 2 1 2 2", "w_Z2 on Z6");
    c.expect(row_string(weights_of(ext(z6, {2}))) == "0 2 1 2 1 2", "w_Z3 on Z6");
    c.expect(row_string(weights_of(lee_metric(6))) == "0 1 2 3 2 1", "w_Lee on Z6");
    c.expect_poly(weight_enumerator(ext(z6, {3})), "4t^2 + t + 1", "Z6 Ext_Z2");
    c.expect_poly(weight_enumerator(ext(z6, {2})), "3t^2 + 2t + 1", "Z6 Ext_Z3");
    c.expect_poly(weight_enumerator(lee_metric(6)), "t^3 + 2t^2 + 2t + 1", "Z6 Lee");
    // D3 encoding: r^a s^b -> a + 3b; rotations 1, 2 are the 3-cycles, 3..5 the transpositions.
    c.expect(row_string(weights_of(ext(s3, {3}))) == "0 2 2 1 2 2", "w_<(12)> on S3");
    c.expect(row_string(weights_of(ext(s3, {1}))) == "0 1 1 2 2 2", "w_<tau> on S3");
    c.expect_poly(weight_enumerator(ext(s3, {3})), "4t^2 + t + 1", "S3 Ext_<(12)>");
    c.expect_poly(weight_enumerator(ext(s3, {1})), "3t^2 + 2t + 1", "S3 Ext_<tau>");
    for (std::size_t order : {2u, 3u}) {
        const EmbeddingMap eta = discrete_eta(*smallest_subgroup_of_order(z6, order), *smallest_subgroup_of_order(s3, order));
        c.pairs(eta.pairs_checked());
    }
}

inline void check_ex_6_6(const CheckParams&, CheckContext& c) {
    for (const auto& spec : order_eight_groups()) {
        const FiniteGroup g = make_group(spec);
        const Subgroup z2 = *smallest_subgroup_of_order(g, 2);
        const MetricTable e2 = extend_metric(g, z2, discrete_metric(z2.as_group()));
        c.pairs(e2.size() * e2.size());
        c.expect_poly(weight_enumerator(e2), "6t^2 + t + 1", spec + " Ext_Z2(Ham)");
        if (auto z4 = smallest_with(g, 4, true)) {
            c.expect_poly(weight_enumerator(extend_metric(g, *z4, discrete_metric(z4->as_group()))), "4t^2 + 3t + 1",
                          spec + " Ext_Z4(Ham)");
            c.expect_poly(weight_enumerator(extend_metric(g, *z4, lee_metric(*z4))), "4t^3 + t^2 + 2t + 1",
                          spec + " Ext_Z4(Lee)");
        }
        if (auto v4 = smallest_with(g, 4, false)) {
            c.expect_poly(weight_enumerator(extend_metric(g, *v4, discrete_metric(v4->as_group()))), "4t^2 + 3t + 1",
                          spec + " Ext_V4(Ham)");
            c.expect_poly(weight_enumerator(extend_metric(g, *v4, hamming2_on_klein(*v4))), "4t^3 + t^2 + 2t + 1",
                          spec + " Ext_V4(Ham^2)");
        }
    }
    const std::vector<std::string> cyclic4 = {"Z8", "Z2 x Z4", "D4", "Q8"}, klein = {"Z2^3", "Z2 x Z4", "D4"};
    for (const auto& spec : order_eight_groups()) {
        const FiniteGroup g = make_group(spec);
        const bool has_c4 = smallest_with(g, 4, true).has_value(), has_v4 = smallest_with(g, 4, false).has_value();
        c.expect(has_c4 == (std::find(cyclic4.begin(), cyclic4.end(), spec) != cyclic4.end()), spec + ": Z4 subgroup mismatch");
        c.expect(has_v4 == (std::find(klein.begin(), klein.end(), spec) != klein.end()), spec + ": Klein subgroup mismatch");
    }
}

inline void check_ex_7_4(const CheckParams&, CheckContext& c) {
    const MetricTable dg = diagonal_chain_metric(FiniteGroup::cyclic(2), 2, 3);
    c.pairs(dg.size());
    c.expect_poly(weight_enumerator(dg), "240t^4 + 12t^3 + 2t^2 + t + 1", "diagonal chain");
    c.expect(dg(dg.size() - 1, 0) == 1, "all-ones word does not have weight 1");
    c.expect_poly(weight_enumerator(rt_metric(2, 8)), "128t^8 + 64t^7 + 32t^6 + 16t^5 + 8t^4 + 4t^3 + 2t^2 + t + 1", "RT on Z2^8");
}

}  // namespace detail

struct CheckInfo {
    std::string name;
    std::string summary;
    std::function<void(const CheckParams&, detail::CheckContext&)> run;
};

inline const std::vector<CheckInfo>& check_registry() {
    using namespace detail;
    static const std::vector<CheckInfo> r{
        {"thm-4.4", "Gray-type maps Z_m -> H^n are isometric and match the closed-form weight [--m --n --variants]", check_thm_4_4},
        {"thm-5.2", "base-q map (Z_q^n, d_RT) -> (Z_{q^n}, d_q) is an isometry [--q --n]", check_thm_5_2},
        {"thm-6.1", "lifted maps between groups with extended metrics [--g1 --g2 --h]", check_thm_6_1},
        {"prop-7.10", "geometric chain isometry onto (H^n, d_RT) [--group --q]",
         [](const CheckParams& p, CheckContext& c) { check_geometric(p, c, false); }},
        {"thm-7.11", "groups of order q^n, q prime, are isometric to (Z_q^n, d_RT) [--group --q]",
         [](const CheckParams& p, CheckContext& c) { check_geometric(p, c, true); }},
        {"thm-8.2", "chain isometry onto block RT space [--group --orders a|b|c]", check_thm_8_2},
        {"prop-3.3", "Hamming space Z_p^n has a cyclic representation only for (2,2) [--p --n]", check_prop_3_3},
        {"rem-7.2", "q-adic and RT metrics are chain metrics [--q --n]", check_rem_7_2},
        {"ex-4.8", "weights and enumerators of the four Gray-type metrics on Z_12", check_ex_4_8},
        {"ex-5.3", "2-adic and RT weights on order 8", check_ex_5_3},
        {"ex-6.5", "extended metrics on Z_6 and S_3", check_ex_6_5},
        {"ex-6.6", "extended-metric enumerators on the groups of order 8", check_ex_6_6},
        {"ex-7.4", "diagonal chain and RT enumerators on Z_2^8", check_ex_7_4},
    };
    return r;
}

/// Runs a named check. Unknown names throw std::invalid_argument; any exception raised by
/// the check itself is reported with status error.
inline VerificationReport run_check(const std::string& name, const CheckParams& params = {}) {
    const auto& reg = check_registry();
    auto it = std::find_if(reg.begin(), reg.end(), [&](const CheckInfo& c) { return c.name == name; });
    if (it == reg.end()) throw std::invalid_argument("unknown check '" + name + "'");
    VerificationReport r;
    r.check = name;
    r.params = params;
    const auto t0 = std::chrono::steady_clock::now();
    detail::CheckContext ctx(r);
    try {
        it->run(params, ctx);
        r.status = ctx.failed() ? CheckStatus::fail : CheckStatus::pass;
    } catch (const std::exception& e) {
        r.status = CheckStatus::error;
        r.witness = e.what();
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace grpmetric

#include <gtest/gtest.h>

#include "grpmetric/embeddings.hpp"
#include "grpmetric/weights.hpp"
#include "oracles.hpp"

using namespace grpmetric;

namespace {

std::vector<Distance> weights(const MetricTable& d) { return weight_function(d).values; }

std::vector<Distance> row(std::initializer_list<Distance> v) { return v; }

}  // namespace

TEST(Psi, MatchesDefinitionAndClosedForm) {
    for (unsigned m = 2; m <= 36; ++m)
        for (unsigned n = 1; n < m; ++n) {
            if (m % n) continue;
            const WordEmbedding e = psi_embedding(m, n);
            const oracle::Matrix o = oracle::psi_matrix(m, n);
            for (Element a = 0; a < m; ++a) {
                EXPECT_EQ(e.source()(a, 0), psi_weight(m, n, a)) << m << "," << n << " t=" << a;
                for (Element b = 0; b < m; ++b) ASSERT_EQ(e.source()(a, b), o[a][b]) << m << "," << n;
            }
            EXPECT_EQ(e.length(), n);
            EXPECT_EQ(e.alphabet_size(), m / n);
            EXPECT_EQ(e.pairs_checked(), std::uint64_t(m) * (m - 1) / 2);
        }
}

TEST(Psi, WordsForSixIntoPairs) {
    const WordEmbedding e = psi_embedding(6, 2);
    const std::vector<Word> want{{0, 0}, {2, 0}, {2, 2}, {4, 2}, {4, 4}, {0, 4}};
    EXPECT_EQ(e.words(), want);
}

// Weight rows of the four maps Z_12 -> H^n for |H| = 2, 3, 4, 6.
TEST(Psi, TwelveRows) {
    EXPECT_EQ(weights(psi_metric(12, 6)), row({0, 1, 2, 3, 4, 5, 6, 5, 4, 3, 2, 1}));
    EXPECT_EQ(weights(psi_metric(12, 4)), row({0, 1, 2, 3, 4, 4, 4, 4, 4, 3, 2, 1}));
    EXPECT_EQ(weights(psi_metric(12, 3)), row({0, 1, 2, 3, 3, 3, 3, 3, 3, 3, 2, 1}));
    EXPECT_EQ(weights(psi_metric(12, 2)), row({0, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1}));
    EXPECT_TRUE(psi_metric(12, 6).same_entries(lee_metric(12)));
    // Z_2n into Z_2^n recovers Lee in general.
    for (unsigned n = 1; n <= 10; ++n) EXPECT_TRUE(psi_metric(2 * n, n).same_entries(lee_metric(2 * n)));
}

TEST(Psi, Parameters) {
    EXPECT_THROW(psi_embedding(12, 5), std::invalid_argument);
    EXPECT_THROW(psi_embedding(12, 12), std::invalid_argument);
    EXPECT_THROW(psi_embedding(12, 4, {0, std::nullopt, 3}), std::invalid_argument);
    EXPECT_THROW(psi_embedding(12, 4, {0, Permutation::from_cycles(4, {{0, 1}, {2, 3}}), 1}), std::invalid_argument);
    EXPECT_THROW(psi_embedding(12, 4, {4, std::nullopt, 1}), std::invalid_argument);
    const WordEmbedding a = psi_embedding(12, 4, {2, Permutation::from_cycles(4, {{0, 3, 1, 2}}), 2});
    EXPECT_TRUE(a.source().same_entries(psi_metric(12, 4)));
}

TEST(Psi, VariantCount) {
    EXPECT_EQ(psi_variant_count(12, 4), 2u * 24u);
    EXPECT_EQ(psi_variant_count(24, 12), 479001600u);
    EXPECT_EQ(psi_variant_count(60, 6), 4u * 720u);
    EXPECT_EQ(factorial(0), 1u);
    EXPECT_THROW(factorial(21), std::overflow_error);
}

TEST(Psi, AllVariantsAgreeSmall) {
    for (unsigned m = 2; m <= 16; ++m)
        for (unsigned n = 1; n < m && n <= 8; ++n) {
            if (m % n) continue;
            const auto r = psi_variants_agree(m, n);
            EXPECT_TRUE(r.agree) << m << "," << n << " " << r.witness;
            EXPECT_EQ(r.checked, psi_variant_count(m, n));
        }
}

// Brute force over every start coordinate, n-cycle and unit for a few small cases.
TEST(Psi, VariantsAgreeWithDirectConstruction) {
    for (auto [m, n] : std::vector<std::pair<unsigned, unsigned>>{{12, 4}, {10, 5}, {9, 3}}) {
        const MetricTable canon = psi_metric(m, n);
        std::vector<Element> rest(n - 1);
        std::iota(rest.begin(), rest.end(), Element{1});
        std::size_t seen = 0;
        do {
            std::vector<Element> cyc{0};
            cyc.insert(cyc.end(), rest.begin(), rest.end());
            for (unsigned unit = 1; unit < m / n; ++unit) {
                if (std::gcd(unit, m / n) != 1) continue;
                for (std::size_t i = 0; i < n; ++i) {
                    const WordEmbedding e = psi_embedding(m, n, {i, Permutation::from_cycles(n, {cyc}), unit});
                    EXPECT_TRUE(e.source().same_entries(canon));
                    ++seen;
                }
            }
        } while (std::next_permutation(rest.begin(), rest.end()));
        // (n-1)! cycles, n starting points: n! orderings per unit.
        EXPECT_EQ(seen, psi_variant_count(m, n));
    }
}

TEST(BaseQ, IsometryBothWays) {
    for (unsigned q : {2u, 3u, 4u, 5u})
        for (unsigned n = 1; n <= 4 && oracle::ipow(q, n) <= 625; ++n) {
            const EmbeddingMap f = base_q_isometry(q, n);
            EXPECT_TRUE(f.is_bijective());
            const auto size = oracle::ipow(q, n);
            EXPECT_EQ(f.pairs_checked(), size * (size - 1) / 2);
            const EmbeddingMap g = f.inverse();
            for (Element x = 0; x < size; ++x) {
                EXPECT_EQ(g(f(x)), x);
                EXPECT_EQ(oracle::rt(oracle::digits(x, q, n)), oracle::qadic(q, n, f(x)));
            }
        }
    EXPECT_EQ(base_q_isometry(2, 3).image(), (std::vector<Element>{0, 1, 2, 3, 4, 5, 6, 7}));
}

TEST(Eta, OrderEightGroupsThroughOrderTwo) {
    const std::vector<std::string> specs{"Z8", "Z2^3", "Z2 x Z4", "D4", "Q8"};
    for (const auto& a : specs)
        for (const auto& b : specs) {
            const FiniteGroup g1 = make_group(a), g2 = make_group(b);
            const Subgroup h1 = *smallest_subgroup_of_order(g1, 2), h2 = *smallest_subgroup_of_order(g2, 2);
            const EmbeddingMap tau = EmbeddingMap::identity(discrete_metric(h1.as_group()));
            const EmbeddingMap tau2 = EmbeddingMap::verified(EmbeddingKind::custom, tau.source(),
                                                             discrete_metric(h2.as_group()), tau.image());
            const EmbeddingMap eta = eta_extension(tau2, transversal(g1, h1), transversal(g2, h2), identity_assignment(4));
            EXPECT_EQ(weight_enumerator(eta.source()).to_string(), "6t^2 + t + 1");
            EXPECT_EQ(weight_enumerator(eta.target()).to_string(), "6t^2 + t + 1");
            EXPECT_EQ(eta(g1.identity()), g2.identity());
        }
}

TEST(Eta, RejectsBadInputs) {
    const FiniteGroup z8 = FiniteGroup::cyclic(8), z4 = FiniteGroup::cyclic(4);
    const Subgroup h8 = *smallest_subgroup_of_order(z8, 2), h4 = *smallest_subgroup_of_order(z4, 2);
    const EmbeddingMap tau = EmbeddingMap::identity(discrete_metric(h8.as_group()));
    EXPECT_THROW(eta_extension(tau, transversal(z8, h8), transversal(z4, h4), identity_assignment(4)), std::invalid_argument);
    EXPECT_THROW(eta_extension(tau, transversal(z8, h8), transversal(z8, h8), {0, 0, 1, 2}), std::invalid_argument);
    EXPECT_THROW(eta_extension(tau, transversal(z8, h8), transversal(z8, h8), {0, 1}), std::invalid_argument);
}

TEST(Eta, GaugeFreedomIsASymmetry) {
    const FiniteGroup d4 = make_group("D4"), q8 = make_group("Q8");
    const Subgroup h1 = *smallest_subgroup_of_order(d4, 2), h2 = *smallest_subgroup_of_order(q8, 2);
    const EmbeddingMap tau = EmbeddingMap::verified(EmbeddingKind::custom, discrete_metric(h1.as_group()),
                                                    discrete_metric(h2.as_group()), {0, 1});
    std::vector<std::size_t> rho{0, 1, 2, 3};
    do {
        const GaugeCheck g = eta_gauge_check(tau, transversal(d4, h1), transversal(q8, h2), {0, 1, 2, 3}, rho);
        EXPECT_TRUE(g.ok);
    } while (std::next_permutation(rho.begin(), rho.end()));
}

TEST(ChainIsometry, Cases) {
    struct Case {
        const char* group;
        std::vector<std::size_t> orders;
        std::vector<std::size_t> partition;
        std::size_t alphabet;
    };
    const std::vector<Case> cases{{"Z8", {1, 2, 4, 8}, {1, 1, 1}, 2}, {"Z4", {1, 2, 4}, {1, 1}, 2},
                                  {"Z8", {1, 2, 8}, {1, 2}, 2},       {"Z9", {1, 3, 9}, {1, 1}, 3},
                                  {"Z27", {1, 3, 27}, {1, 2}, 3},     {"D4", {1, 2, 4, 8}, {1, 1, 1}, 2},
                                  {"Q8", {1, 2, 4, 8}, {1, 1, 1}, 2}, {"Z16", {1, 4, 16}, {1, 1}, 4},
                                  {"Z2^4", {1, 2, 8, 16}, {1, 2, 1}, 2}, {"Z4^2", {1, 4, 16}, {1, 1}, 4}};
    for (const auto& c : cases) {
        const FiniteGroup g = make_group(c.group);
        const auto chain = chain_with_orders(g, c.orders);
        ASSERT_TRUE(chain) << c.group;
        const ChainIsometry ci = chain_isometry(*chain);
        EXPECT_EQ(ci.partition, c.partition) << c.group;
        EXPECT_EQ(ci.alphabet.order(), c.alphabet);
        EXPECT_TRUE(ci.map.source().same_entries(chain_metric(*chain)));
        EXPECT_TRUE(ci.map.target().same_entries(brt_metric(ci.alphabet, c.partition)));
        EXPECT_TRUE(ci.map.is_bijective());
    }
    EXPECT_THROW(chain_isometry(*chain_with_orders(FiniteGroup::cyclic(12), {1, 2, 12})), std::invalid_argument);
}

TEST(ChainIsometry, CyclicTwoPowerIsIdentityOnIndices) {
    const ChainIsometry ci = geometric_chain_isometry(FiniteGroup::cyclic(8), 2);
    EXPECT_EQ(ci.map.image(), identity_image(8));
    EXPECT_TRUE(ci.map.target().same_entries(rt_metric(2, 3)));
}

TEST(Rm1, GeneratorAndWords) {
    const auto gen = rm1_generator_matrix(2, 3);
    ASSERT_EQ(gen.size(), 3u);
    EXPECT_EQ(gen[0], (std::vector<Element>{1, 1, 1, 1}));
    EXPECT_EQ(gen[1], (std::vector<Element>{0, 0, 1, 1}));
    EXPECT_EQ(gen[2], (std::vector<Element>{0, 1, 0, 1}));
    const WordEmbedding e = rm1_embedding(2, 3);
    const std::vector<Word> want{{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 1, 1, 0},
                                 {1, 1, 1, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}, {1, 0, 0, 1}};
    EXPECT_EQ(e.words(), want);
}

TEST(Rm1, HammingWeightIsHomogeneous) {
    for (auto [p, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {3, 3}, {5, 2}}) {
        const WordEmbedding e = rm1_embedding(p, n);
        ASSERT_EQ(e.source().size(), oracle::ipow(p, n));
        EXPECT_EQ(e.length(), oracle::ipow(p, n - 1));
        for (Element x = 0; x < e.source().size(); ++x) {
            unsigned w = 0;
            for (Element c : e(x)) w += c != 0;
            EXPECT_EQ(w, oracle::homogeneous(p, n, x)) << p << "," << n << " x=" << x;
        }
    }
    EXPECT_THROW(rm1_embedding(4, 2), std::invalid_argument);
    EXPECT_THROW(rm1_embedding(2, 1), std::invalid_argument);
}

TEST(Compose, ChainsOfVerifiedMaps) {
    const EmbeddingMap f = base_q_isometry(2, 3);
    const EmbeddingMap c = compose(f, f.inverse());
    EXPECT_EQ(c.image(), identity_image(8));
    EXPECT_THROW(compose(f, base_q_isometry(2, 2)), std::invalid_argument);
}

TEST(Embedding, Output) {
    const EmbeddingMap f = base_q_isometry(2, 2);
    EXPECT_EQ(f.to_json(), "{\"kind\": \"base_q\", \"source\": 4, \"target\": 4, \"image\": [0, 1, 2, 3]}");
    EXPECT_NE(f.listing().find("|->"), std::string::npos);
    EXPECT_THROW(EmbeddingMap::verified(EmbeddingKind::custom, lee_metric(4), qadic_metric(2, 2), {0, 1, 2, 3}), std::logic_error);
}

#include <gtest/gtest.h>

#include <cstdlib>

#include "grpmetric/groups.hpp"
#include "oracles.hpp"

using namespace grpmetric;

namespace {

std::vector<std::size_t> orders_of(const std::vector<Subgroup>& subs) {
    std::vector<std::size_t> out;
    for (const auto& s : subs) out.push_back(s.order());
    return out;
}

class ScopedEnv {
public:
    ScopedEnv(const char* key, const char* value) : key_(key) { setenv(key, value, 1); }
    ~ScopedEnv() { unsetenv(key_); }

private:
    const char* key_;
};

}  // namespace

TEST(Groups, CyclicIsAdditionModM) {
    const FiniteGroup z = FiniteGroup::cyclic(12);
    EXPECT_EQ(z.order(), 12u);
    EXPECT_EQ(z.identity(), 0u);
    for (Element a = 0; a < 12; ++a) {
        EXPECT_EQ(z.inverse(a), (12 - a) % 12);
        for (Element b = 0; b < 12; ++b) EXPECT_EQ(z.op(a, b), (a + b) % 12);
    }
    EXPECT_TRUE(z.is_abelian());
    EXPECT_TRUE(z.is_cyclic_family());
}

TEST(Groups, DihedralMatchesVertexPermutations) {
    for (unsigned k : {3u, 4u, 5u, 6u}) {
        const FiniteGroup d = FiniteGroup::dihedral(k);
        ASSERT_EQ(d.order(), 2 * k);
        for (Element a = 0; a < d.order(); ++a)
            for (Element b = 0; b < d.order(); ++b) EXPECT_EQ(d.op(a, b), oracle::dihedral_op(k, a, b)) << k << " " << a << " " << b;
        EXPECT_FALSE(d.is_abelian());
    }
    EXPECT_EQ(FiniteGroup::dihedral(4).label(5), "rs");
}

TEST(Groups, QuaternionMatchesComplexMatrices) {
    for (unsigned order : {8u, 16u}) {
        const FiniteGroup q = FiniteGroup::quaternion(order);
        for (Element a = 0; a < order; ++a)
            for (Element b = 0; b < order; ++b) EXPECT_EQ(q.op(a, b), oracle::quaternion_op(order, a, b));
    }
    const FiniteGroup q8 = FiniteGroup::quaternion(8);
    std::vector<Element> involutions;
    for (Element x = 0; x < 8; ++x)
        if (element_order(q8, x) == 2) involutions.push_back(x);
    EXPECT_EQ(involutions, std::vector<Element>{2});
    EXPECT_THROW(FiniteGroup::quaternion(12), std::invalid_argument);
    EXPECT_THROW(FiniteGroup::quaternion(4), std::invalid_argument);
}

TEST(Groups, ProductsUseMixedRadixLeftmostMostSignificant) {
    const FiniteGroup g = make_group("Z2 x Z3");
    EXPECT_EQ(g.order(), 6u);
    EXPECT_EQ(g.coordinates(4), (std::vector<Element>{1, 1}));
    const std::vector<Element> c{1, 2};
    EXPECT_EQ(g.from_coordinates(c), 5u);
    EXPECT_EQ(g.label(5), "(1,2)");
    const FiniteGroup f = make_group("Z2 x D4");
    EXPECT_EQ(f.inverse(f.from_coordinates(std::vector<Element>{1, 3})), f.from_coordinates(std::vector<Element>{1, 1}));
}

TEST(Groups, DescriptorParsing) {
    EXPECT_EQ(make_group("Z12").order(), 12u);
    EXPECT_EQ(make_group("Z2^3").factors().size(), 3u);
    EXPECT_EQ(make_group(" Z2 x Z4 ").order(), 8u);
    EXPECT_EQ(make_group("D4").order(), 8u);
    EXPECT_EQ(make_group("Q8").order(), 8u);
    EXPECT_EQ(make_group("Z2^2 x Z3").factors().size(), 3u);
    EXPECT_TRUE(make_group("Z2^3").same_table(FiniteGroup::power(FiniteGroup::cyclic(2), 3)));
    for (const char* bad : {"", "Z", "Z0", "X3", "Z2 x", "Z2^", "D0", "Q6", "Z2 y Z3"}) {
        EXPECT_THROW(make_group(bad), std::invalid_argument) << bad;
    }
}

TEST(Groups, CarrierBound) {
    EXPECT_EQ(max_carrier(), 4096u);
    EXPECT_THROW(make_group("Z2^13"), std::length_error);
    {
        ScopedEnv env("GRPMETRIC_MAX_CARRIER", "64");
        EXPECT_EQ(max_carrier(), 64u);
        EXPECT_THROW(FiniteGroup::cyclic(65), std::length_error);
        EXPECT_NO_THROW(FiniteGroup::cyclic(64));
    }
    {
        ScopedEnv env("GRPMETRIC_MAX_CARRIER", "100000");
        EXPECT_EQ(max_carrier(), 4096u);
    }
}

TEST(Groups, TabulatedValidatesAxioms) {
    // Z3 with identity at index 2.
    const std::vector<std::vector<Element>> t{{1, 2, 0}, {2, 0, 1}, {0, 1, 2}};
    const FiniteGroup g = FiniteGroup::tabulated(t, "shifted");
    EXPECT_EQ(g.identity(), 2u);
    EXPECT_EQ(g.inverse(0), 1u);
    const std::vector<std::vector<Element>> not_assoc{{0, 1, 2}, {1, 0, 0}, {2, 2, 1}};
    EXPECT_THROW(FiniteGroup::tabulated(not_assoc), std::invalid_argument);
    EXPECT_THROW(FiniteGroup::tabulated({{0, 1}, {1, 2}}), std::invalid_argument);
}

TEST(Groups, InvalidElements) {
    const FiniteGroup z = FiniteGroup::cyclic(4);
    EXPECT_THROW(z.require_element(4), std::out_of_range);
    EXPECT_NO_THROW(z.require_element(3));
}

// Number of subgroups: 2^4 has 1 + 15 + 35 + 15 + 1 (Gaussian binomials at q = 2).
TEST(Subgroups, Counts) {
    EXPECT_EQ(enumerate_subgroups(make_group("Z2^4")).size(), 67u);
    EXPECT_EQ(enumerate_subgroups(make_group("D4")).size(), 10u);
    EXPECT_EQ(enumerate_subgroups(make_group("Q8")).size(), 6u);
    EXPECT_EQ(enumerate_subgroups(make_group("Z12")).size(), 6u);
    EXPECT_EQ(enumerate_subgroups(make_group("D3")).size(), 6u);
    EXPECT_EQ(enumerate_subgroups(make_group("Z2 x Z4")).size(), 8u);
    auto z12 = orders_of(enumerate_subgroups(make_group("Z12")));
    std::sort(z12.begin(), z12.end());
    EXPECT_EQ(z12, (std::vector<std::size_t>{1, 2, 3, 4, 6, 12}));
}

TEST(Subgroups, GeneratedAndMembership) {
    const FiniteGroup d4 = make_group("D4");
    const Subgroup rot = subgroup_generated(d4, {1});
    EXPECT_EQ(rot.elements(), (std::vector<Element>{0, 1, 2, 3}));
    EXPECT_EQ(rot.index(), 2u);
    EXPECT_TRUE(rot.contains(3));
    EXPECT_FALSE(rot.contains(4));
    EXPECT_EQ(rot.position(2), 2u);
    EXPECT_EQ(rot.position(5), npos);
    EXPECT_EQ(subgroup_generated(d4, {1, 4}).order(), 8u);
    EXPECT_THROW(Subgroup::from_elements(d4, {0, 1}), std::invalid_argument);
    const FiniteGroup induced = rot.as_group();
    EXPECT_TRUE(induced.same_table(FiniteGroup::cyclic(4)));
}

TEST(Subgroups, CyclicOfIndex) {
    const auto c = cyclic_subgroup_of_index(FiniteGroup::cyclic(12), 4);
    EXPECT_EQ(c.subgroup.elements(), (std::vector<Element>{0, 4, 8}));
    EXPECT_EQ(c.generator, 4u);
    EXPECT_THROW(cyclic_subgroup_of_index(FiniteGroup::cyclic(12), 5), std::invalid_argument);
}

TEST(Transversals, DecomposeIsRightCoset) {
    for (const char* spec : {"D4", "Q8", "Z2 x Z4", "D3", "Z12"}) {
        const FiniteGroup g = make_group(spec);
        for (const auto& h : enumerate_subgroups(g)) {
            const Transversal t = transversal(g, h);
            ASSERT_EQ(t.size(), h.index());
            EXPECT_EQ(t.representatives().front(), g.identity());
            for (Element x = 0; x < g.order(); ++x) {
                const auto [hh, j] = t.decompose(x);
                EXPECT_TRUE(h.contains(hh));
                EXPECT_EQ(g.op(hh, t.representatives()[j]), x);
                EXPECT_EQ(t.coset_of(x), j);
            }
        }
    }
    const FiniteGroup d4 = make_group("D4");
    EXPECT_EQ(transversal(d4, subgroup_generated(d4, {1})).representatives(), (std::vector<Element>{0, 4}));
}

TEST(Chains, Validation) {
    const FiniteGroup z8 = FiniteGroup::cyclic(8);
    const auto good = validate_chain(z8, {{0}, {0, 4}, {0, 2, 4, 6}, {0, 1, 2, 3, 4, 5, 6, 7}});
    EXPECT_TRUE(good.valid);
    EXPECT_EQ(good.indices, (std::vector<std::size_t>{2, 2, 2}));
    const auto bad_start = validate_chain(z8, {{0, 4}, {0, 1, 2, 3, 4, 5, 6, 7}});
    ASSERT_FALSE(bad_start.valid);
    EXPECT_EQ(bad_start.violations.front().kind, "start");
    const auto not_sub = validate_chain(z8, {{0}, {0, 1}, {0, 1, 2, 3, 4, 5, 6, 7}});
    ASSERT_FALSE(not_sub.valid);
    EXPECT_EQ(not_sub.violations.front().kind, "subgroup");
    const auto not_nested = validate_chain(z8, {{0}, {0, 4}, {0, 2, 4, 6}, {0, 4}, {0, 1, 2, 3, 4, 5, 6, 7}});
    EXPECT_FALSE(not_nested.valid);
    const auto no_end = validate_chain(z8, {{0}, {0, 4}});
    ASSERT_FALSE(no_end.valid);
    EXPECT_EQ(no_end.violations.back().kind, "endpoint");
    EXPECT_FALSE(validate_chain(z8, {}).valid);
    EXPECT_THROW(SubgroupChain::from_elements(z8, {{0}, {0, 1}, {0, 1, 2, 3, 4, 5, 6, 7}}), std::invalid_argument);
}

TEST(Chains, ByOrders) {
    const FiniteGroup d4 = make_group("D4");
    const auto c = chain_with_orders(d4, {2, 4});
    ASSERT_TRUE(c);
    EXPECT_EQ(c->orders(), (std::vector<std::size_t>{1, 2, 4, 8}));
    EXPECT_THROW(chain_with_orders(d4, {3}), std::invalid_argument);
    EXPECT_THROW(chain_with_orders(FiniteGroup::cyclic(12), {4, 6}), std::invalid_argument);
    EXPECT_TRUE(chain_with_orders(FiniteGroup::cyclic(12), {2, 6}));
}

TEST(Chains, GeometricAndCoordinate) {
    const FiniteGroup d4 = make_group("D4");
    const SubgroupChain g = geometric_chain(d4, 2);
    ASSERT_EQ(g.length(), 3u);
    EXPECT_EQ(g[1].elements(), (std::vector<Element>{0, 2}));
    EXPECT_EQ(g[2].elements(), (std::vector<Element>{0, 1, 2, 3}));
    const FiniteGroup v = make_group("Z2^3");
    EXPECT_EQ(geometric_chain(v, 2)[2].elements(), (std::vector<Element>{0, 1, 2, 3}));
    const SubgroupChain cc = coordinate_chain(v);
    EXPECT_EQ(cc[1].elements(), (std::vector<Element>{0, 4}));
    EXPECT_EQ(cc[2].elements(), (std::vector<Element>{0, 2, 4, 6}));
    EXPECT_THROW(geometric_chain(FiniteGroup::cyclic(12), 2), std::invalid_argument);
    EXPECT_THROW(coordinate_chain(FiniteGroup::cyclic(4)), std::invalid_argument);
}

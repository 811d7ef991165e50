#include <random>

#include <gtest/gtest.h>

#include "resetmon/errors.hpp"
#include "resetmon/models.hpp"
#include "resetmon/product.hpp"
#include "test_support.hpp"

namespace resetmon {
namespace {

TEST(MarkovChain, RejectsNonStochasticRows) {
    EXPECT_THROW(MarkovChain({}, {{{0, 0.9}}}, {1.0}, {0}), ConfigError);
    EXPECT_THROW(MarkovChain({}, {{{0, 1.5}, {0, -0.5}}}, {1.0}, {0}), ConfigError);
    EXPECT_THROW(MarkovChain({}, {{{0, 0.5}, {0, 0.5}}}, {1.0}, {0}), ConfigError);
    EXPECT_THROW(MarkovChain({}, {{}}, {1.0}, {0}), ConfigError);
    EXPECT_THROW(MarkovChain({}, {{{1, 1.0}}}, {1.0}, {0}), ConfigError);
}

TEST(MarkovChain, RejectsBadInitialDistributionAndLabels) {
    EXPECT_THROW(MarkovChain({}, {{{0, 1.0}}}, {0.5}, {0}), ConfigError);
    EXPECT_THROW(MarkovChain({"p"}, {{{0, 1.0}}}, {1.0}, {2}), ConfigError);
    EXPECT_THROW(MarkovChain({"p", "p"}, {{{0, 1.0}}}, {1.0}, {0}), ConfigError);
    EXPECT_THROW(MarkovChain({}, {}, {}, {}), ConfigError);
}

TEST(MarkovChain, PMinIsSmallestProbability) {
    const MarkovChain chain({}, {{{0, 0.25}, {1, 0.75}}, {{1, 1.0}}}, {1.0, 0.0}, {0, 0});
    EXPECT_EQ(chain.p_min(), 0.25);
    EXPECT_EQ(chain.name(1), "s1");
}

TEST(RabinAutomaton, RejectsPartialOrOutOfRangeData) {
    EXPECT_THROW(RabinAutomaton({"p"}, 2, {0, 1, 1}, 0, {}), ConfigError);
    EXPECT_THROW(RabinAutomaton({"p"}, 2, {0, 1, 1, 2}, 0, {}), ConfigError);
    EXPECT_THROW(RabinAutomaton({"p"}, 2, {0, 1, 1, 1}, 2, {}), ConfigError);
    EXPECT_THROW(RabinAutomaton({"p"}, 2, {0, 1, 1, 1}, 0, {{{3}, {}}}), ConfigError);
}

TEST(RabinAutomaton, ReorderingPreservesTransitions) {
    // q0 moves to q1 exactly on letters containing "a" but not "b".
    std::vector<StateId> delta(2 * 4, 0);
    delta[0 * 4 + 0b01] = 1;
    for (Letter l = 0; l < 4; ++l) delta[4 + l] = 1;
    const RabinAutomaton dra({"a", "b"}, 2, delta, 0, {{{}, {1}}});
    const auto swapped = dra.reordered({"b", "a"});
    EXPECT_EQ(swapped.propositions(), (std::vector<std::string>{"b", "a"}));
    EXPECT_EQ(swapped.next(0, 0b10), 1u);
    EXPECT_EQ(swapped.next(0, 0b01), 0u);
    EXPECT_EQ(swapped.reordered({"a", "b"}), dra);
    EXPECT_THROW(dra.reordered({"a", "c"}), ConfigError);
}

TEST(Product, Fig1WithEventuallyP) {
    const auto product = build_product(gen_fig1(4), builtin_dra("Fp"));
    // s0..s4 and s_bad stay in q0, s_good moves to q1
    EXPECT_EQ(product.num_states(), 7u);
    ASSERT_EQ(product.initial().size(), 1u);
    EXPECT_EQ(product.initial()[0].target, 0u);
    EXPECT_EQ(product.state(0), (ProductState{0, 0}));
    EXPECT_EQ(product.p_min(), 0.5);
    const auto good = product.find({5, 1});
    const auto bad = product.find({6, 0});
    ASSERT_TRUE(good && bad);
    EXPECT_TRUE(product.has_edge(*good, *good));
    EXPECT_FALSE(product.has_edge(*good, *bad));
    EXPECT_EQ(classify_scc(std::vector<StateId>{*good}, product.pairs()), Verdict::Good);
    EXPECT_EQ(classify_scc(std::vector<StateId>{*bad}, product.pairs()), Verdict::Bad);
    EXPECT_FALSE(product.find({6, 1}).has_value());
}

TEST(Product, PropositionMismatchNamesTheDifference) {
    const MarkovChain chain({"q"}, {{{0, 1.0}}}, {1.0}, {0});
    try {
        build_product(chain, builtin_dra("Fp"));
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("q (chain only)"), std::string::npos) << what;
        EXPECT_NE(what.find("p (automaton only)"), std::string::npos) << what;
    }
}

TEST(Product, DifferentPropositionOrderIsAligned) {
    // chain over (b, a); automaton over (a, b) accepting F(a & !b)
    std::vector<StateId> delta(2 * 4, 0);
    delta[0b01] = 1;
    for (Letter l = 0; l < 4; ++l) delta[4 + l] = 1;
    const RabinAutomaton dra({"a", "b"}, 2, delta, 0, {{{}, {1}}});
    // chain letter bit 0 is b, bit 1 is a: state 1 carries a only
    const MarkovChain chain({"b", "a"}, {{{1, 1.0}}, {{1, 1.0}}}, {1.0, 0.0}, {0b00, 0b10});
    const auto product = build_product(chain, dra);
    const auto s1 = product.find({1, 1});
    ASSERT_TRUE(s1.has_value());
    EXPECT_EQ(classify_scc(std::vector<StateId>{*s1}, product.pairs()), Verdict::Good);
}

TEST(Product, RowsStayStochasticOnRandomModels) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        const auto product = testing::random_product(rng, 20);
        double init = 0.0;
        for (const auto& t : product.initial()) init += t.probability;
        EXPECT_NEAR(init, 1.0, 1e-12);
        for (StateId s = 0; s < product.num_states(); ++s) {
            double sum = 0.0;
            for (const auto& t : product.successors(s)) {
                sum += t.probability;
                ASSERT_LT(t.target, product.num_states());
            }
            ASSERT_NEAR(sum, 1.0, 1e-12);
        }
    }
}

TEST(Product, ClassifyNeedsInfWithoutFin) {
    LiftedPair pair{{0, 1, 0}, {1, 0, 1}};
    const std::vector<LiftedPair> pairs{pair};
    EXPECT_EQ(classify_scc(std::vector<StateId>{0}, pairs), Verdict::Good);
    EXPECT_EQ(classify_scc(std::vector<StateId>{0, 1}, pairs), Verdict::Bad);
    EXPECT_EQ(classify_scc(std::vector<StateId>{2}, pairs), Verdict::Good);
    EXPECT_EQ(classify_scc(std::vector<StateId>{1}, pairs), Verdict::Bad);
    EXPECT_EQ(classify_scc(std::vector<StateId>{0}, std::vector<LiftedPair>{}), Verdict::Bad);
}

}  // namespace
}  // namespace resetmon

#include <algorithm>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "resetmon/errors.hpp"
#include "resetmon/naive_candidate.hpp"
#include "resetmon/tracker.hpp"
#include "resetmon/visit_heap.hpp"
#include "test_support.hpp"

namespace resetmon {
namespace {

using testing::accept_all;
using testing::complete_chain;

class CompleteProduct : public ::testing::Test {
protected:
    void SetUp() override {
        chain_ = std::make_unique<MarkovChain>(complete_chain(4));
        product_ = std::make_unique<ProductChain>(build_product(*chain_, accept_all()));
    }
    // p_k written as chain state k
    std::vector<StateId> path(std::initializer_list<StateId> chain_states) const {
        std::vector<StateId> out;
        for (StateId c : chain_states) out.push_back(*product_->find({c, 0}));
        return out;
    }
    std::unique_ptr<MarkovChain> chain_;
    std::unique_ptr<ProductChain> product_;
};

TEST_F(CompleteProduct, StrengthTableRows) {
    const std::vector<std::pair<std::vector<StateId>, std::uint64_t>> rows = {
        {path({0, 1}), 0},
        {path({0, 1, 1}), 0},
        {path({0, 1, 1, 1}), 1},
        {path({0, 1, 1, 1, 0}), 0},
        {path({0, 1, 1, 1, 0, 1}), 0},
        {path({0, 1, 1, 1, 0, 1, 0}), 1},
        {path({0, 1, 1, 1, 0, 1, 0, 0, 1}), 2},
    };
    for (const auto& [p, expected] : rows) {
        CandidateTracker tracker(*product_);
        for (StateId s : p) tracker.step(s);
        EXPECT_EQ(tracker.strength(), expected) << "path length " << p.size();
        EXPECT_EQ(naive_strength(p), expected) << "path length " << p.size();
    }
}

TEST_F(CompleteProduct, StrengthTableCandidates) {
    CandidateTracker tracker(*product_);
    const auto p = path({0, 1, 1, 1, 0, 1, 0, 0, 1});
    tracker.step(p[0]);
    tracker.step(p[1]);
    EXPECT_FALSE(tracker.has_candidate());
    tracker.step(p[2]);
    ASSERT_TRUE(tracker.has_candidate());
    EXPECT_EQ(tracker.candidate_members(), path({1}));
    EXPECT_EQ(tracker.birthday(), 3u);
    tracker.step(p[3]);
    tracker.step(p[4]);
    auto both = path({0, 1});
    std::sort(both.begin(), both.end());
    EXPECT_EQ(tracker.candidate_members(), both);
    EXPECT_EQ(tracker.birthday(), 5u);
    EXPECT_EQ(tracker.candidate_index(), 2u);
}

TEST_F(CompleteProduct, CandidateSequenceOfExampleRun) {
    // p0 p1 p1 p1 p0 p1 p2 p2: K1 = {p1}, K2 = {p0, p1}, K3 = {p2}
    const auto p = path({0, 1, 1, 1, 0, 1, 2, 2});
    CandidateTracker tracker(*product_);
    std::vector<std::vector<StateId>> candidates;
    for (StateId s : p) {
        tracker.step(s);
        if (tracker.has_candidate() && (candidates.size() < tracker.candidate_index()))
            candidates.push_back(tracker.candidate_members());
    }
    auto k2 = path({0, 1});
    std::sort(k2.begin(), k2.end());
    ASSERT_EQ(candidates.size(), 3u);
    EXPECT_EQ(candidates[0], path({1}));
    EXPECT_EQ(candidates[1], k2);
    EXPECT_EQ(candidates[2], path({2}));
}

TEST_F(CompleteProduct, ElementaryCircuitGainsOnePerLap) {
    const auto cycle = path({0, 1, 2, 3});
    CandidateTracker tracker(*product_);
    for (StateId s : cycle) tracker.step(s);
    tracker.step(cycle[0]);  // closes the circuit: birth, strength 0
    ASSERT_TRUE(tracker.has_candidate());
    EXPECT_EQ(tracker.candidate_size(), 4u);
    EXPECT_EQ(tracker.strength(), 0u);
    for (std::uint64_t lap = 1; lap <= 5; ++lap) {
        for (std::size_t k = 1; k < cycle.size(); ++k) {
            tracker.step(cycle[k]);
            EXPECT_EQ(tracker.strength(), lap - 1);
        }
        tracker.step(cycle[0]);
        EXPECT_EQ(tracker.strength(), lap);
    }
}

TEST_F(CompleteProduct, RejectsNonEdgesAndRestartsAfterReset) {
    const MarkovChain line({}, {{{1, 1.0}}, {{1, 1.0}}}, {1.0, 0.0}, {0, 0});
    const auto product = build_product(line, accept_all());
    CandidateTracker tracker(product);
    tracker.step(0);
    EXPECT_THROW(tracker.step(0), ProtocolError);
    tracker.step(1);
    tracker.step(1);
    EXPECT_EQ(tracker.candidate_index(), 1u);
    tracker.reset();
    EXPECT_EQ(tracker.path_length(), 0u);
    EXPECT_FALSE(tracker.has_candidate());
    tracker.step(1);
    tracker.step(1);
    EXPECT_EQ(tracker.candidate_index(), 1u);
    EXPECT_NE(tracker.debug_dump().find("root"), std::string::npos);
}

// Independent check of the pairing heap against a plain map of keys.
TEST(VisitHeap, MatchesBruteForceMinimum) {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 200; ++round) {
        VisitHeapForest forest;
        std::vector<std::uint32_t> heaps;
        std::vector<std::vector<std::uint32_t>> members;
        std::vector<VisitKey> keys;
        for (int op = 0; op < 300; ++op) {
            const auto choice = rng() % 3;
            if (choice == 0 || heaps.empty()) {
                const VisitKey key{rng() % 20, rng() % 20, static_cast<StateId>(keys.size())};
                keys.push_back(key);
                heaps.push_back(forest.make(key));
                members.push_back({static_cast<std::uint32_t>(keys.size() - 1)});
            } else if (choice == 1 && heaps.size() > 1) {
                const auto a = rng() % heaps.size();
                auto b = rng() % (heaps.size() - 1);
                if (b >= a) ++b;
                heaps[a] = forest.meld(heaps[a], heaps[b]);
                members[a].insert(members[a].end(), members[b].begin(), members[b].end());
                heaps.erase(heaps.begin() + static_cast<long>(b));
                members.erase(members.begin() + static_cast<long>(b));
            } else {
                const auto h = rng() % heaps.size();
                const auto node = members[h][rng() % members[h].size()];
                keys[node] = VisitKey{rng() % 20, rng() % 20, keys[node].state};
                heaps[h] = forest.update(heaps[h], node, keys[node]);
            }
            for (std::size_t h = 0; h < heaps.size(); ++h) {
                VisitKey expected = keys[members[h][0]];
                for (auto m : members[h]) expected = std::min(expected, keys[m]);
                ASSERT_EQ(forest.key(heaps[h]), expected);
            }
        }
    }
}

TEST(CandidateTracker, MatchesNaiveOnRandomWalks) {
    std::mt19937_64 rng(2024);
    for (int walk_no = 0; walk_no < 1500; ++walk_no) {
        const auto product = testing::random_product(rng, 10);
        const auto walk = testing::random_walk(product, 1 + rng() % 120, rng);
        CandidateTracker tracker(product);
        std::uint64_t births = 0;
        std::optional<std::size_t> last_birthday;
        for (std::size_t k = 0; k < walk.size(); ++k) {
            tracker.step(walk[k]);
            const std::span<const StateId> prefix(walk.data(), k + 1);
            const auto expected = naive_candidate(prefix, product.pairs());
            const auto birthday = naive_birthday(prefix);
            if (birthday && birthday != last_birthday) ++births;
            last_birthday = birthday;
            ASSERT_EQ(tracker.has_candidate(), expected.has_value());
            if (!expected) continue;
            ASSERT_EQ(tracker.candidate_members(), expected->members);
            ASSERT_EQ(tracker.verdict(), expected->verdict);
            ASSERT_EQ(tracker.birthday(), birthday);
            ASSERT_EQ(tracker.candidate_index(), births);
            ASSERT_EQ(tracker.strength(), naive_strength(prefix));
        }
    }
}

TEST(CandidateTracker, StrengthIsMonotoneWithinACandidate) {
    std::mt19937_64 rng(77);
    for (int walk_no = 0; walk_no < 300; ++walk_no) {
        const auto product = testing::random_product(rng, 12);
        const auto walk = testing::random_walk(product, 400, rng);
        CandidateTracker tracker(product);
        std::uint64_t index = 0, strength = 0;
        for (StateId s : walk) {
            tracker.step(s);
            if (!tracker.has_candidate()) continue;
            if (tracker.candidate_index() == index) {
                ASSERT_GE(tracker.strength(), strength);
                ASSERT_LE(tracker.strength(), strength + 1);
            } else {
                ASSERT_EQ(tracker.strength(), 0u);
            }
            index = tracker.candidate_index();
            strength = tracker.strength();
        }
    }
}

TEST(CandidateTracker, OperationCountIsLinear) {
    std::mt19937_64 rng(9);
    for (int walk_no = 0; walk_no < 200; ++walk_no) {
        const auto product = testing::random_product(rng, 15);
        const auto walk = testing::random_walk(product, 2000, rng);
        CandidateTracker tracker(product);
        for (StateId s : walk) tracker.step(s);
        ASSERT_LE(tracker.counters().total(), 4 * walk.size());
        ASSERT_LE(tracker.counters().root_extracts, tracker.counters().root_inserts);
    }
}

TEST(NaiveCandidate, TrivialComponentsHaveNoCandidate) {
    const std::vector<StateId> p{0, 1, 2};
    EXPECT_FALSE(naive_birthday(p).has_value());
    EXPECT_EQ(naive_strength(p), 0u);
    const std::vector<StateId> single{3};
    EXPECT_FALSE(naive_birthday(single).has_value());
}

}  // namespace
}  // namespace resetmon

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "resetmon/product.hpp"

namespace resetmon {

struct CandidateSet {
    std::vector<StateId> members;  // sorted
    Verdict verdict;

    friend bool operator==(const CandidateSet&, const CandidateSet&) = default;
};

// Reference implementations recomputed from scratch on the whole path. They
// only look at the explored graph (states and edges of the path) and serve as
// the ground truth for CandidateTracker.

/// K(path): the support of a suffix whose graph is a BSCC of the explored
/// graph, or nullopt. A lone state without a traversed edge is no candidate.
std::optional<CandidateSet> naive_candidate(std::span<const StateId> path,
                                            std::span<const LiftedPair> pairs);

/// Path length of the shortest prefix that already has K(path) as its
/// candidate; nullopt when K(path) is undefined.
std::optional<std::size_t> naive_birthday(std::span<const StateId> path);

/// Str(path): minimum, over members of K(path), of the number of occurrences
/// after the birth position. 0 when K(path) is undefined.
std::uint64_t naive_strength(std::span<const StateId> path);

/// K of every prefix, index k holding K(path[0..k]). Quadratic; for tests.
std::vector<std::optional<CandidateSet>> naive_candidate_sequence(
    std::span<const StateId> path, std::span<const LiftedPair> pairs);

}  // namespace resetmon

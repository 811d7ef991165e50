#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "resetmon/markov_chain.hpp"

namespace resetmon {

/// Visits pair of a state: birthday of the candidate current at its last
/// visit (0 standing for undefined) and the visit count since that birthday.
/// Ordered by birthday, then count, then state id, so that the minimum of a
/// component is a member not visited since the current birthday whenever
/// one exists.
struct VisitKey {
    std::uint64_t birthday = 0;
    std::uint64_t count = 0;
    StateId state = 0;

    friend auto operator<=>(const VisitKey&, const VisitKey&) = default;
};

/// Forest of pairing heaps over a shared node pool. A node is identified by
/// its slot (one slot per tracked state); heaps are identified by the slot
/// of their root. Supports meld, find-min and arbitrary key updates in
/// O(log n) amortized time.
class VisitHeapForest {
public:
    static constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();

    /// New singleton heap; returns its slot.
    std::uint32_t make(const VisitKey& key);
    std::uint32_t meld(std::uint32_t a, std::uint32_t b);
    /// Sets the key of `node` inside the heap rooted at `root`; returns the
    /// new root.
    std::uint32_t update(std::uint32_t root, std::uint32_t node, const VisitKey& key);

    const VisitKey& key(std::uint32_t node) const { return nodes_[node].key; }
    std::size_t size() const noexcept { return nodes_.size(); }
    void clear() noexcept { nodes_.clear(); }
    void reserve(std::size_t n) { nodes_.reserve(n); }

private:
    struct Node {
        VisitKey key;
        std::uint32_t child = kNil;
        std::uint32_t next = kNil;
        // Parent when this is the leftmost child, previous sibling otherwise.
        std::uint32_t prev = kNil;
    };

    void cut(std::uint32_t node);
    std::uint32_t combine_children(std::uint32_t node);

    std::vector<Node> nodes_;
    std::vector<std::uint32_t> scratch_;
};

}  // namespace resetmon

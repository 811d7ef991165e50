#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resetmon/product.hpp"
#include "resetmon/visit_heap.hpp"

namespace resetmon {

struct Candidate {
    std::vector<StateId> members;  // sorted
    std::uint64_t index;           // 1-based, counted since the last reset
    std::uint64_t strength;
    Verdict verdict;

    friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Instrumented operation counts on the root sequence and visit heaps.
struct TrackerCounters {
    std::uint64_t root_inserts = 0;
    std::uint64_t root_extracts = 0;
    std::uint64_t heap_inserts = 0;
    std::uint64_t heap_merges = 0;
    std::uint64_t key_updates = 0;

    std::uint64_t total() const noexcept {
        return root_inserts + root_extracts + heap_inserts + heap_merges + key_updates;
    }
};

/// Incremental candidate/strength tracker over a growing product path.
///
/// States get discovery indices 1, 2, ... in order of first visit. Roots of
/// the explored SCCs form an ascending stack; the component of root r_k holds
/// exactly the states discovered between r_k and r_{k+1}, so the current
/// candidate (the last component, when it contains an explored edge) is a
/// contiguous range of the discovery order. Each component owns a pairing
/// heap of Visits keys whose minimum yields the strength.
///
/// Single-owner mutable state; one tracker per trial.
class CandidateTracker {
public:
    explicit CandidateTracker(const ProductChain& product);

    /// Forget the path, as after a monitor reset.
    void reset();

    /// Extends the path by `next`. The first call after construction or
    /// reset starts the path; later calls must follow a product edge from the
    /// previous state, otherwise ProtocolError is thrown.
    void step(StateId next);

    bool has_candidate() const noexcept { return has_candidate_; }
    std::uint64_t strength() const;
    std::uint64_t candidate_index() const noexcept { return candidate_index_; }
    /// Only meaningful while has_candidate().
    Verdict verdict() const noexcept { return verdict_; }
    std::size_t candidate_size() const noexcept;
    std::vector<StateId> candidate_members() const;
    std::optional<Candidate> candidate() const;

    std::uint64_t path_length() const noexcept { return path_length_; }
    std::size_t discovered() const noexcept { return order_.size(); }
    std::optional<std::uint64_t> birthday() const noexcept;
    std::optional<StateId> last_state() const noexcept;
    /// Discovery indices of the current roots, ascending.
    const std::vector<std::uint32_t>& roots() const noexcept { return roots_; }
    const TrackerCounters& counters() const noexcept { return counters_; }

    /// One line per root with its members and their Visits pairs.
    std::string debug_dump() const;

private:
    void discover(StateId s);
    void give_birth();
    void visit_in_last_component(StateId s);
    void merge_down_to(std::uint32_t discovery);
    Verdict compute_verdict() const;

    const ProductChain* product_;
    std::vector<std::uint32_t> discovery_;  // 0 = undiscovered
    std::vector<StateId> order_;            // order_[d - 1] has discovery index d
    std::vector<std::uint32_t> roots_;
    std::vector<std::uint32_t> heaps_;      // heap root slot per root
    VisitHeapForest forest_;                // slot d - 1 belongs to order_[d - 1]
    // Per pair, number of fin / inf states among the first d discovered.
    std::vector<std::vector<std::uint32_t>> fin_prefix_;
    std::vector<std::vector<std::uint32_t>> inf_prefix_;

    std::uint64_t path_length_ = 0;
    StateId last_ = 0;
    bool has_candidate_ = false;
    std::uint64_t birthday_ = 0;
    std::uint64_t candidate_index_ = 0;
    Verdict verdict_ = Verdict::Bad;
    TrackerCounters counters_;
};

}  // namespace resetmon

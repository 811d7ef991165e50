#pragma once

#include <string>
#include <vector>

#include "resetmon/markov_chain.hpp"

namespace resetmon {

/// Rabin acceptance pair: accepted when `fin` is visited finitely often and
/// `inf` infinitely often. Both are sorted state lists.
struct RabinPair {
    std::vector<StateId> fin;
    std::vector<StateId> inf;

    friend bool operator==(const RabinPair&, const RabinPair&) = default;
};

/// Deterministic, complete Rabin automaton over letters 2^AP.
class RabinAutomaton {
public:
    /// `delta[q * 2^|ap| + letter]` is the successor of q on `letter`.
    RabinAutomaton(std::vector<std::string> propositions,
                   std::size_t num_states,
                   std::vector<StateId> delta,
                   StateId initial,
                   std::vector<RabinPair> pairs);

    std::size_t num_states() const noexcept { return num_states_; }
    std::size_t num_letters() const noexcept { return std::size_t{1} << propositions_.size(); }
    StateId initial() const noexcept { return initial_; }
    StateId next(StateId q, Letter letter) const { return delta_.at(q * num_letters() + letter); }
    const std::vector<std::string>& propositions() const noexcept { return propositions_; }
    const std::vector<RabinPair>& pairs() const noexcept { return pairs_; }

    /// Same automaton with letters re-encoded over `order`, a permutation of
    /// this automaton's propositions.
    RabinAutomaton reordered(const std::vector<std::string>& order) const;

    friend bool operator==(const RabinAutomaton&, const RabinAutomaton&) = default;

private:
    std::vector<std::string> propositions_;
    std::size_t num_states_;
    std::vector<StateId> delta_;
    StateId initial_;
    std::vector<RabinPair> pairs_;
};

}  // namespace resetmon

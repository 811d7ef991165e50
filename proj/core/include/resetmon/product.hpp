#pragma once

#include <optional>
#include <span>
#include <vector>

#include "resetmon/markov_chain.hpp"
#include "resetmon/rabin_automaton.hpp"

namespace resetmon {

struct ProductState {
    StateId chain_state;
    StateId automaton_state;

    friend bool operator==(const ProductState&, const ProductState&) = default;
};

/// Rabin pair lifted to product states: membership flags indexed by product
/// state id.
struct LiftedPair {
    std::vector<char> fin;
    std::vector<char> inf;
};

enum class Verdict { Good, Bad };

const char* to_string(Verdict v) noexcept;

/// Reachable fragment of the chain x automaton product. States are interned
/// to dense ids in BFS discovery order from the initial states, transitions
/// are stored in CSR form.
class ProductChain {
public:
    ProductChain(std::vector<ProductState> states,
                 std::vector<std::uint32_t> offsets,
                 std::vector<Transition> transitions,
                 std::vector<Transition> initial,
                 std::vector<LiftedPair> pairs);

    std::size_t num_states() const noexcept { return states_.size(); }
    std::size_t num_transitions() const noexcept { return transitions_.size(); }
    ProductState state(StateId id) const { return states_.at(id); }
    std::span<const Transition> successors(StateId id) const {
        return {transitions_.data() + offsets_[id], transitions_.data() + offsets_[id + 1]};
    }
    bool has_edge(StateId from, StateId to) const;

    /// Sparse initial distribution; targets are the states with mu' > 0.
    std::span<const Transition> initial() const noexcept { return initial_; }
    std::span<const LiftedPair> pairs() const noexcept { return pairs_; }
    std::optional<StateId> find(ProductState s) const;

    double p_min() const noexcept { return p_min_; }

private:
    std::vector<ProductState> states_;
    std::vector<std::uint32_t> offsets_;
    std::vector<Transition> transitions_;
    std::vector<Transition> initial_;
    std::vector<LiftedPair> pairs_;
    double p_min_ = 1.0;
};

/// Throws ConfigError naming the differing propositions when the chain and
/// automaton do not share the same proposition set. Differing order is fine.
ProductChain build_product(const MarkovChain& chain, const RabinAutomaton& dra);

/// Good iff some pair has no fin-member in K and at least one inf-member in K.
Verdict classify_scc(std::span<const StateId> members, std::span<const LiftedPair> pairs);

}  // namespace resetmon

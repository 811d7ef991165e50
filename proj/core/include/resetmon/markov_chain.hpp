#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace resetmon {

using StateId = std::uint32_t;

/// Set of atomic propositions, bit k standing for the k-th proposition of
/// the owning chain or automaton.
using Letter = std::uint32_t;

inline constexpr std::size_t kMaxPropositions = 16;
inline constexpr double kProbabilityTolerance = 1e-9;

struct Transition {
    StateId target;
    double probability;

    friend bool operator==(const Transition&, const Transition&) = default;
};

/// Finite labelled Markov chain. Immutable once constructed; the constructor
/// enforces positive probabilities, stochastic rows and a normalized initial
/// distribution (tolerance 1e-9) and throws ConfigError otherwise. Rows are
/// stored sorted by target.
class MarkovChain {
public:
    MarkovChain(std::vector<std::string> propositions,
                std::vector<std::vector<Transition>> rows,
                std::vector<double> initial,
                std::vector<Letter> labels,
                std::vector<std::string> names = {});

    std::size_t num_states() const noexcept { return rows_.size(); }
    std::span<const Transition> successors(StateId s) const { return rows_.at(s); }
    double initial(StateId s) const { return initial_.at(s); }
    const std::vector<double>& initial_distribution() const noexcept { return initial_; }
    Letter label(StateId s) const { return labels_.at(s); }
    const std::vector<std::string>& propositions() const noexcept { return propositions_; }
    const std::string& name(StateId s) const { return names_.at(s); }

    /// Smallest listed transition probability.
    double p_min() const noexcept { return p_min_; }

    friend bool operator==(const MarkovChain&, const MarkovChain&) = default;

private:
    std::vector<std::string> propositions_;
    std::vector<std::vector<Transition>> rows_;
    std::vector<double> initial_;
    std::vector<Letter> labels_;
    std::vector<std::string> names_;
    double p_min_ = 1.0;
};

inline double p_min(const MarkovChain& chain) { return chain.p_min(); }

}  // namespace resetmon

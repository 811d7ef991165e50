#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "resetmon/markov_chain.hpp"
#include "resetmon/rabin_automaton.hpp"

namespace resetmon {

/// States s0..sn, s_good, s_bad (ids 0..n, n+1, n+2). s0 loops or advances
/// with 1/2, s1..s_{n-1} advance or fall back to s0 with 1/2, s_n moves to
/// s_good or s_bad with 1/2. Only s_good is labelled p.
MarkovChain gen_fig1(std::size_t n);

/// States s0..s_{n-1}, s_good (ids 0..n). Every s_i loops or advances with
/// 1/2; s_good is absorbing and the only p-state.
MarkovChain gen_fig2(std::size_t n);

struct RandomChainOptions {
    /// Allowed transition probabilities; each row is a multiset of these
    /// summing to exactly 1. Dyadic values keep the sums exact.
    std::vector<double> palette{0.5, 0.25};
    /// Chance that a successor is drawn from the states at or after the source
    /// (instead of uniformly). Higher values give more, smaller SCCs.
    double forward_bias = 0.7;
    /// Maximum number of successors per state.
    std::size_t max_out_degree = 4;
    std::vector<std::string> propositions{"p"};
};

/// Seeded random chain over one proposition "p" with initial state 0.
/// Throws GenerationError when no palette multiset sums to 1.
MarkovChain gen_random(std::size_t n, std::uint64_t seed, const RandomChainOptions& options = {});

/// Built-in properties over AP {p}: "Fp", "Gp", "GFp", "FGp", "GFimpliesFG".
RabinAutomaton builtin_dra(std::string_view name);
std::vector<std::string> builtin_dra_names();

}  // namespace resetmon

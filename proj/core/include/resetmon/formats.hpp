#pragma once

#include <string>
#include <string_view>

#include "resetmon/markov_chain.hpp"
#include "resetmon/rabin_automaton.hpp"

namespace resetmon {

// Explicit-state chain format:
//
//   mc <nstates> <nap>
//   ap <name> ...
//   state <id> [<bits>] init=<prob> [name=<name>]
//   <src> <dst> <prob>
//
// <bits> holds one 0/1 character per proposition in `ap` order. Probabilities
// are decimals or a/b rationals. '#' starts a comment. Diagnostics:
// E_HEADER, E_SYNTAX, E_PROB, E_UNKNOWN_STATE, E_DUP_STATE, E_MISSING_STATE,
// E_DUP_TRANSITION, E_ROWSUM, E_INITSUM.

MarkovChain parse_chain(std::string_view text);
std::string serialize_chain(const MarkovChain& chain);

// HOA v1 subset: deterministic and complete, state-based acceptance given as
// a disjunction of (Fin(x) & Inf(y)) conjuncts, explicit labels over declared
// APs. Diagnostics: E_HOA_HEADER, E_HOA_SYNTAX, E_HOA_BODY, E_HOA_ACCEPTANCE,
// E_HOA_AP, E_HOA_NONDET, E_HOA_INCOMPLETE, E_HOA_STATE.

RabinAutomaton parse_dra_hoa(std::string_view text);
std::string to_hoa(const RabinAutomaton& dra, std::string_view name = "");

}  // namespace resetmon

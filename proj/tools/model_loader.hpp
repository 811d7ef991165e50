#pragma once

#include <string>

#include "resetmon/markov_chain.hpp"
#include "resetmon/rabin_automaton.hpp"

namespace resetmon::cli {

/// `builtin:fig1:<n>`, `builtin:fig2:<n>`, `builtin:random:<n>:<seed>` or a
/// chain file path.
MarkovChain load_model(const std::string& spec);

/// `prop:<name>` or an HOA file path.
RabinAutomaton load_property(const std::string& spec);

}  // namespace resetmon::cli

#include "resetmon/rabin_automaton.hpp"

#include <algorithm>
#include <set>

#include "resetmon/errors.hpp"

namespace resetmon {

namespace {

std::vector<StateId> normalized(std::vector<StateId> states, std::size_t num_states) {
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    if (!states.empty() && states.back() >= num_states)
        throw ConfigError("Rabin pair refers to a state out of range");
    return states;
}

}  // namespace

RabinAutomaton::RabinAutomaton(std::vector<std::string> propositions, std::size_t num_states,
                               std::vector<StateId> delta, StateId initial,
                               std::vector<RabinPair> pairs)
    : propositions_(std::move(propositions)),
      num_states_(num_states),
      delta_(std::move(delta)),
      initial_(initial),
      pairs_(std::move(pairs)) {
    if (propositions_.size() > kMaxPropositions)
        throw ConfigError("too many atomic propositions (max 16)");
    if (std::set<std::string>(propositions_.begin(), propositions_.end()).size() !=
        propositions_.size())
        throw ConfigError("duplicate atomic proposition");
    if (num_states_ == 0) throw ConfigError("automaton has no states");
    if (delta_.size() != num_states_ * num_letters())
        throw ConfigError("transition function is not total");
    for (StateId q : delta_)
        if (q >= num_states_) throw ConfigError("transition to a state out of range");
    if (initial_ >= num_states_) throw ConfigError("initial state out of range");
    for (auto& pair : pairs_) {
        pair.fin = normalized(std::move(pair.fin), num_states_);
        pair.inf = normalized(std::move(pair.inf), num_states_);
    }
}

RabinAutomaton RabinAutomaton::reordered(const std::vector<std::string>& order) const {
    if (order.size() != propositions_.size())
        throw ConfigError("reordering must be a permutation of the propositions");
    // position[k]: index in `order` of our k-th proposition
    std::vector<std::size_t> position(propositions_.size());
    for (std::size_t k = 0; k < propositions_.size(); ++k) {
        auto it = std::find(order.begin(), order.end(), propositions_[k]);
        if (it == order.end())
            throw ConfigError("reordering must be a permutation of the propositions");
        position[k] = static_cast<std::size_t>(it - order.begin());
    }
    std::vector<StateId> delta(delta_.size());
    for (std::size_t q = 0; q < num_states_; ++q) {
        for (Letter old_letter = 0; old_letter < num_letters(); ++old_letter) {
            Letter new_letter = 0;
            for (std::size_t k = 0; k < propositions_.size(); ++k)
                if (old_letter & (Letter{1} << k)) new_letter |= Letter{1} << position[k];
            delta[q * num_letters() + new_letter] = delta_[q * num_letters() + old_letter];
        }
    }
    return RabinAutomaton(order, num_states_, std::move(delta), initial_, pairs_);
}

}  // namespace resetmon

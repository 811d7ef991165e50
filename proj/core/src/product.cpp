#include "resetmon/product.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "resetmon/errors.hpp"

namespace resetmon {

const char* to_string(Verdict v) noexcept { return v == Verdict::Good ? "Good" : "Bad"; }

ProductChain::ProductChain(std::vector<ProductState> states, std::vector<std::uint32_t> offsets,
                           std::vector<Transition> transitions, std::vector<Transition> initial,
                           std::vector<LiftedPair> pairs)
    : states_(std::move(states)),
      offsets_(std::move(offsets)),
      transitions_(std::move(transitions)),
      initial_(std::move(initial)),
      pairs_(std::move(pairs)) {
    if (offsets_.size() != states_.size() + 1 || offsets_.back() != transitions_.size())
        throw InternalError("inconsistent product transition table");
    for (const auto& t : transitions_) p_min_ = std::min(p_min_, t.probability);
}

bool ProductChain::has_edge(StateId from, StateId to) const {
    for (const auto& t : successors(from))
        if (t.target == to) return true;
    return false;
}

std::optional<StateId> ProductChain::find(ProductState s) const {
    auto it = std::find(states_.begin(), states_.end(), s);
    if (it == states_.end()) return std::nullopt;
    return static_cast<StateId>(it - states_.begin());
}

ProductChain build_product(const MarkovChain& chain, const RabinAutomaton& input_dra) {
    const auto& chain_ap = chain.propositions();
    const auto& dra_ap = input_dra.propositions();
    const std::set<std::string> chain_set(chain_ap.begin(), chain_ap.end());
    const std::set<std::string> dra_set(dra_ap.begin(), dra_ap.end());
    if (chain_set != dra_set) {
        std::string diff;
        for (const auto& p : chain_set)
            if (!dra_set.count(p)) diff += " " + p + " (chain only)";
        for (const auto& p : dra_set)
            if (!chain_set.count(p)) diff += " " + p + " (automaton only)";
        throw ConfigError("atomic propositions differ:" + diff);
    }
    const RabinAutomaton dra = dra_ap == chain_ap ? input_dra : input_dra.reordered(chain_ap);

    const std::size_t nq = dra.num_states();
    constexpr auto kUnseen = std::numeric_limits<StateId>::max();
    std::vector<StateId> id_of(chain.num_states() * nq, kUnseen);
    std::vector<ProductState> states;

    auto intern = [&](StateId s, StateId q) {
        StateId& slot = id_of[static_cast<std::size_t>(s) * nq + q];
        if (slot == kUnseen) {
            slot = static_cast<StateId>(states.size());
            states.push_back({s, q});
        }
        return slot;
    };

    std::vector<Transition> initial;
    for (StateId s = 0; s < chain.num_states(); ++s) {
        const double mu = chain.initial(s);
        if (mu > 0.0) initial.push_back({intern(s, dra.next(dra.initial(), chain.label(s))), mu});
    }

    // BFS discovery order fixes the ids; rows are emitted in that order too.
    std::vector<std::uint32_t> offsets{0};
    std::vector<Transition> transitions;
    for (StateId id = 0; id < states.size(); ++id) {
        const auto [s, q] = states[id];
        for (const auto& t : chain.successors(s)) {
            const StateId next = intern(t.target, dra.next(q, chain.label(t.target)));
            transitions.push_back({next, t.probability});
        }
        offsets.push_back(static_cast<std::uint32_t>(transitions.size()));
    }

    std::vector<LiftedPair> pairs;
    for (const auto& pair : dra.pairs()) {
        LiftedPair lifted{std::vector<char>(states.size(), 0), std::vector<char>(states.size(), 0)};
        std::vector<char> in_fin(nq, 0), in_inf(nq, 0);
        for (StateId q : pair.fin) in_fin[q] = 1;
        for (StateId q : pair.inf) in_inf[q] = 1;
        for (StateId id = 0; id < states.size(); ++id) {
            lifted.fin[id] = in_fin[states[id].automaton_state];
            lifted.inf[id] = in_inf[states[id].automaton_state];
        }
        pairs.push_back(std::move(lifted));
    }

    return ProductChain(std::move(states), std::move(offsets), std::move(transitions),
                        std::move(initial), std::move(pairs));
}

Verdict classify_scc(std::span<const StateId> members, std::span<const LiftedPair> pairs) {
    for (const auto& pair : pairs) {
        bool touches_fin = false;
        bool touches_inf = false;
        for (StateId s : members) {
            touches_fin = touches_fin || pair.fin[s];
            touches_inf = touches_inf || pair.inf[s];
        }
        if (!touches_fin && touches_inf) return Verdict::Good;
    }
    return Verdict::Bad;
}

}  // namespace resetmon

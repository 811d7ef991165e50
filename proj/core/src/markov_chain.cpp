#include "resetmon/markov_chain.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "resetmon/errors.hpp"

namespace resetmon {

ParseError::ParseError(std::string code, std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(code + (line ? " at " + std::to_string(line) + ":" + std::to_string(column) : "") +
            ": " + message),
      code_(std::move(code)),
      line_(line),
      column_(column) {}

MarkovChain::MarkovChain(std::vector<std::string> propositions,
                         std::vector<std::vector<Transition>> rows, std::vector<double> initial,
                         std::vector<Letter> labels, std::vector<std::string> names)
    : propositions_(std::move(propositions)),
      rows_(std::move(rows)),
      initial_(std::move(initial)),
      labels_(std::move(labels)),
      names_(std::move(names)) {
    const std::size_t n = rows_.size();
    if (n == 0) throw ConfigError("Markov chain has no states");
    if (propositions_.size() > kMaxPropositions)
        throw ConfigError("too many atomic propositions (max 16)");
    if (std::set<std::string>(propositions_.begin(), propositions_.end()).size() !=
        propositions_.size())
        throw ConfigError("duplicate atomic proposition");
    if (initial_.size() != n || labels_.size() != n)
        throw ConfigError("initial distribution and labels must cover every state");
    if (names_.empty()) {
        names_.reserve(n);
        for (std::size_t s = 0; s < n; ++s) names_.push_back("s" + std::to_string(s));
    } else if (names_.size() != n) {
        throw ConfigError("state names must cover every state");
    }

    const Letter letter_mask =
        propositions_.size() == 32 ? ~Letter{0} : (Letter{1} << propositions_.size()) - 1;
    p_min_ = 1.0;
    for (std::size_t s = 0; s < n; ++s) {
        if ((labels_[s] & ~letter_mask) != 0)
            throw ConfigError("label of state " + names_[s] + " uses undeclared propositions");
        if (rows_[s].empty()) throw ConfigError("state " + names_[s] + " has no successors");
        std::sort(rows_[s].begin(), rows_[s].end(),
                  [](const Transition& a, const Transition& b) { return a.target < b.target; });
        double sum = 0.0;
        std::set<StateId> seen;
        for (const auto& t : rows_[s]) {
            if (t.target >= n)
                throw ConfigError("state " + names_[s] + " has a successor out of range");
            if (!(t.probability > 0.0) || t.probability > 1.0)
                throw ConfigError("state " + names_[s] + " has a probability outside (0,1]");
            if (!seen.insert(t.target).second)
                throw ConfigError("state " + names_[s] + " lists a successor twice");
            sum += t.probability;
            p_min_ = std::min(p_min_, t.probability);
        }
        if (std::abs(sum - 1.0) > kProbabilityTolerance)
            throw ConfigError("outgoing probabilities of state " + names_[s] + " sum to " +
                              std::to_string(sum));
    }
    double init_sum = 0.0;
    for (double p : initial_) {
        if (p < 0.0 || p > 1.0) throw ConfigError("initial probability outside [0,1]");
        init_sum += p;
    }
    if (std::abs(init_sum - 1.0) > kProbabilityTolerance)
        throw ConfigError("initial distribution sums to " + std::to_string(init_sum));
}

}  // namespace resetmon

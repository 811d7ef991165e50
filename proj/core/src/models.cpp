#include "resetmon/models.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "resetmon/errors.hpp"

namespace resetmon {

MarkovChain gen_fig1(std::size_t n) {
    if (n == 0) throw ConfigError("fig1 needs n >= 1");
    const auto good = static_cast<StateId>(n + 1);
    const auto bad = static_cast<StateId>(n + 2);
    std::vector<std::vector<Transition>> rows(n + 3);
    std::vector<std::string> names(n + 3);
    rows[0] = {{0, 0.5}, {1, 0.5}};
    for (std::size_t i = 1; i < n; ++i)
        rows[i] = {{static_cast<StateId>(i + 1), 0.5}, {0, 0.5}};
    rows[n] = {{good, 0.5}, {bad, 0.5}};
    rows[good] = {{good, 1.0}};
    rows[bad] = {{bad, 1.0}};
    for (std::size_t i = 0; i <= n; ++i) names[i] = "s" + std::to_string(i);
    names[good] = "s_good";
    names[bad] = "s_bad";

    std::vector<double> initial(n + 3, 0.0);
    initial[0] = 1.0;
    std::vector<Letter> labels(n + 3, 0);
    labels[good] = 1;
    return MarkovChain({"p"}, std::move(rows), std::move(initial), std::move(labels),
                       std::move(names));
}

MarkovChain gen_fig2(std::size_t n) {
    if (n == 0) throw ConfigError("fig2 needs n >= 1");
    const auto good = static_cast<StateId>(n);
    std::vector<std::vector<Transition>> rows(n + 1);
    std::vector<std::string> names(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i] = {{static_cast<StateId>(i), 0.5}, {static_cast<StateId>(i + 1), 0.5}};
        names[i] = "s" + std::to_string(i);
    }
    rows[good] = {{good, 1.0}};
    names[good] = "s_good";

    std::vector<double> initial(n + 1, 0.0);
    initial[0] = 1.0;
    std::vector<Letter> labels(n + 1, 0);
    labels[good] = 1;
    return MarkovChain({"p"}, std::move(rows), std::move(initial), std::move(labels),
                       std::move(names));
}

namespace {

// All multisets (as palette index lists, non-decreasing) of at most
// `max_size` palette entries summing to 1.
void find_rows(const std::vector<double>& palette, std::size_t max_size, std::size_t from,
               double sum, std::vector<std::size_t>& current,
               std::vector<std::vector<std::size_t>>& out) {
    if (std::abs(sum - 1.0) <= 1e-12) {
        out.push_back(current);
        return;
    }
    if (current.size() == max_size || sum > 1.0) return;
    for (std::size_t k = from; k < palette.size(); ++k) {
        current.push_back(k);
        find_rows(palette, max_size, k, sum + palette[k], current, out);
        current.pop_back();
    }
}

std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

}  // namespace

MarkovChain gen_random(std::size_t n, std::uint64_t seed, const RandomChainOptions& options) {
    if (n == 0) throw ConfigError("random chain needs n >= 1");
    if (options.palette.empty()) throw GenerationError("empty probability palette");
    if (options.max_out_degree == 0) throw GenerationError("max_out_degree must be positive");
    if (options.propositions.size() > kMaxPropositions)
        throw GenerationError("too many propositions");
    for (double p : options.palette)
        if (!(p > 0.0 && p <= 1.0)) throw GenerationError("palette entries must lie in (0,1]");

    std::vector<std::vector<std::size_t>> shapes;
    std::vector<std::size_t> current;
    find_rows(options.palette, std::min(options.max_out_degree, n), 0, 0.0, current, shapes);
    if (shapes.empty())
        throw GenerationError("no multiset of palette probabilities sums to 1 within " +
                              std::to_string(std::min(options.max_out_degree, n)) + " entries");

    std::mt19937_64 rng(seed);
    std::vector<std::vector<Transition>> rows(n);
    std::vector<Letter> labels(n);
    const Letter letters = Letter{1} << options.propositions.size();
    for (std::size_t s = 0; s < n; ++s) {
        const auto& shape = shapes[below(rng, shapes.size())];
        std::vector<StateId> targets;
        while (targets.size() < shape.size()) {
            const auto forward_taken = static_cast<std::size_t>(std::count_if(
                targets.begin(), targets.end(), [&](StateId t) { return t >= s; }));
            const bool forward = forward_taken < n - s &&
                                 static_cast<double>(rng() >> 11) * 0x1.0p-53 < options.forward_bias;
            StateId t = forward ? static_cast<StateId>(s + below(rng, n - s))
                                : static_cast<StateId>(below(rng, n));
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        for (std::size_t k = 0; k < shape.size(); ++k)
            rows[s].push_back({targets[k], options.palette[shape[k]]});
        std::sort(rows[s].begin(), rows[s].end(),
                  [](const Transition& a, const Transition& b) { return a.target < b.target; });
        labels[s] = static_cast<Letter>(below(rng, letters));
    }
    std::vector<double> initial(n, 0.0);
    initial[0] = 1.0;
    return MarkovChain(options.propositions, std::move(rows), std::move(initial),
                       std::move(labels));
}

RabinAutomaton builtin_dra(std::string_view name) {
    // Letter 0 is {} and letter 1 is {p}; delta is indexed q * 2 + letter.
    if (name == "Fp") return RabinAutomaton({"p"}, 2, {0, 1, 1, 1}, 0, {{{}, {1}}});
    if (name == "Gp") return RabinAutomaton({"p"}, 2, {1, 0, 1, 1}, 0, {{{1}, {0}}});
    // States remember the last letter: q0 after {}, q1 after {p}.
    if (name == "GFp") return RabinAutomaton({"p"}, 2, {0, 1, 0, 1}, 0, {{{}, {1}}});
    if (name == "FGp") return RabinAutomaton({"p"}, 2, {0, 1, 0, 1}, 0, {{{0}, {1}}});
    // GF p -> FG p, i.e. FG !p or FG p; q0 is a fresh initial state.
    if (name == "GFimpliesFG")
        return RabinAutomaton({"p"}, 3, {1, 2, 1, 2, 1, 2}, 0, {{{2}, {1}}, {{1}, {2}}});
    throw ConfigError("unknown builtin property '" + std::string(name) + "'");
}

std::vector<std::string> builtin_dra_names() { return {"Fp", "Gp", "GFp", "FGp", "GFimpliesFG"}; }

}  // namespace resetmon

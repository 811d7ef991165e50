#include "resetmon/naive_candidate.hpp"

#include <algorithm>
#include <limits>

namespace resetmon {

namespace {

/// Explored graph of a path over local vertex ids.
struct ExploredGraph {
    std::vector<StateId> vertices;  // sorted; local id = position
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::vector<std::uint32_t>> in;

    explicit ExploredGraph(std::span<const StateId> path) : vertices(path.begin(), path.end()) {
        std::sort(vertices.begin(), vertices.end());
        vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
        out.resize(vertices.size());
        in.resize(vertices.size());
        for (std::size_t k = 1; k < path.size(); ++k) {
            const auto u = local(path[k - 1]);
            const auto v = local(path[k]);
            if (std::find(out[u].begin(), out[u].end(), v) == out[u].end()) {
                out[u].push_back(v);
                in[v].push_back(u);
            }
        }
    }

    std::uint32_t local(StateId s) const {
        return static_cast<std::uint32_t>(
            std::lower_bound(vertices.begin(), vertices.end(), s) - vertices.begin());
    }

    std::vector<char> reach(std::uint32_t from, bool forward) const {
        const auto& adj = forward ? out : in;
        std::vector<char> seen(vertices.size(), 0);
        std::vector<std::uint32_t> stack{from};
        seen[from] = 1;
        while (!stack.empty()) {
            const auto u = stack.back();
            stack.pop_back();
            for (auto v : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
        return seen;
    }
};

/// Members of K(path), or empty when undefined.
std::vector<StateId> candidate_members(std::span<const StateId> path) {
    if (path.empty()) return {};
    const ExploredGraph g(path);
    const auto last = g.local(path.back());
    const auto forward = g.reach(last, true);
    const auto backward = g.reach(last, false);

    std::vector<StateId> members;
    bool has_edge = false;
    for (std::uint32_t v = 0; v < g.vertices.size(); ++v) {
        if (!forward[v]) continue;
        // Something reachable from the last state that cannot come back: the
        // SCC of the last state is not bottom.
        if (!backward[v]) return {};
        members.push_back(g.vertices[v]);
        has_edge = has_edge || !g.out[v].empty();
    }
    // Every edge out of a bottom component stays inside, so any out-edge of a
    // member is an internal edge.
    if (!has_edge) return {};
    return members;
}

}  // namespace

std::optional<CandidateSet> naive_candidate(std::span<const StateId> path,
                                            std::span<const LiftedPair> pairs) {
    auto members = candidate_members(path);
    if (members.empty()) return std::nullopt;
    const Verdict verdict = classify_scc(members, pairs);
    return CandidateSet{std::move(members), verdict};
}

std::optional<std::size_t> naive_birthday(std::span<const StateId> path) {
    const auto members = candidate_members(path);
    if (members.empty()) return std::nullopt;

    // K(path[0..t]) == K(path) exactly when the edges traversed so far inside K
    // make K strongly connected: K is an SCC of the full explored graph, so it
    // can be no larger in a prefix, and it is bottom there as well.
    auto in_k = [&](StateId s) { return std::binary_search(members.begin(), members.end(), s); };
    auto local = [&](StateId s) {
        return static_cast<std::uint32_t>(std::lower_bound(members.begin(), members.end(), s) -
                                          members.begin());
    };
    const std::size_t m = members.size();
    std::vector<std::vector<std::uint32_t>> out(m), in(m);

    auto strongly_connected = [&]() {
        for (const auto* adj : {&out, &in}) {
            std::vector<char> seen(m, 0);
            std::vector<std::uint32_t> stack{0};
            seen[0] = 1;
            std::size_t count = 1;
            while (!stack.empty()) {
                const auto u = stack.back();
                stack.pop_back();
                for (auto v : (*adj)[u])
                    if (!seen[v]) {
                        seen[v] = 1;
                        ++count;
                        stack.push_back(v);
                    }
            }
            if (count != m) return false;
        }
        return true;
    };

    for (std::size_t t = 1; t < path.size(); ++t) {
        if (!in_k(path[t - 1]) || !in_k(path[t])) continue;
        const auto u = local(path[t - 1]);
        const auto v = local(path[t]);
        if (std::find(out[u].begin(), out[u].end(), v) != out[u].end()) continue;
        out[u].push_back(v);
        in[v].push_back(u);
        if (strongly_connected()) return t + 1;
    }
    return std::nullopt;  // unreachable for a defined candidate
}

std::uint64_t naive_strength(std::span<const StateId> path) {
    const auto birth = naive_birthday(path);
    if (!birth) return 0;
    const auto members = candidate_members(path);
    std::vector<std::uint64_t> occurrences(members.size(), 0);
    for (std::size_t k = *birth; k < path.size(); ++k) {
        const auto it = std::lower_bound(members.begin(), members.end(), path[k]);
        ++occurrences[static_cast<std::size_t>(it - members.begin())];
    }
    return *std::min_element(occurrences.begin(), occurrences.end());
}

std::vector<std::optional<CandidateSet>> naive_candidate_sequence(
    std::span<const StateId> path, std::span<const LiftedPair> pairs) {
    std::vector<std::optional<CandidateSet>> sequence;
    sequence.reserve(path.size());
    for (std::size_t k = 1; k <= path.size(); ++k)
        sequence.push_back(naive_candidate(path.first(k), pairs));
    return sequence;
}

}  // namespace resetmon

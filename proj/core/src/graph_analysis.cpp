#include "resetmon/graph_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "resetmon/errors.hpp"
#include "resetmon/naive_candidate.hpp"

namespace resetmon {

std::size_t SccDecomposition::max_component_size() const {
    std::size_t best = 0;
    for (const auto& c : components) best = std::max(best, c.size());
    return best;
}

SccDecomposition scc_decompose(std::span<const std::vector<StateId>> adjacency) {
    const std::size_t n = adjacency.size();
    constexpr auto kUnvisited = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<StateId> stack;
    std::vector<std::pair<StateId, std::size_t>> calls;  // (vertex, next edge)
    std::vector<std::vector<StateId>> components;
    std::uint32_t counter = 0;

    for (StateId root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        calls.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!calls.empty()) {
            auto& [v, edge] = calls.back();
            if (edge < adjacency[v].size()) {
                const StateId w = adjacency[v][edge++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    calls.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const StateId done = v;
            calls.pop_back();
            if (!calls.empty()) {
                const StateId parent = calls.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                std::vector<StateId> component;
                StateId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    component.push_back(w);
                } while (w != done);
                std::sort(component.begin(), component.end());
                components.push_back(std::move(component));
            }
        }
    }

    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    SccDecomposition result;
    result.component_of.assign(n, 0);
    for (std::uint32_t c = 0; c < components.size(); ++c)
        for (StateId s : components[c]) result.component_of[s] = c;
    result.is_bottom.assign(components.size(), true);
    for (StateId s = 0; s < n; ++s)
        for (StateId t : adjacency[s])
            if (result.component_of[t] != result.component_of[s])
                result.is_bottom[result.component_of[s]] = false;
    result.components = std::move(components);
    return result;
}

namespace {

std::vector<std::vector<StateId>> adjacency_of(const ProductChain& product) {
    std::vector<std::vector<StateId>> adjacency(product.num_states());
    for (StateId s = 0; s < product.num_states(); ++s)
        for (const auto& t : product.successors(s)) adjacency[s].push_back(t.target);
    return adjacency;
}

/// Solves (I - A) x = b by Gaussian elimination with partial pivoting.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-300) throw InternalError("singular reachability system");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
        x[i] = acc / a[i][i];
    }
    return x;
}

constexpr std::size_t kDenseLimit = 2000;

}  // namespace

SccDecomposition scc_decompose(const ProductChain& product) {
    const auto adjacency = adjacency_of(product);
    return scc_decompose(std::span<const std::vector<StateId>>(adjacency));
}

std::vector<double> good_reachability(const ProductChain& product, LinearSolver solver) {
    const std::size_t n = product.num_states();
    const auto scc = scc_decompose(product);

    // 1 = good bottom, 2 = bad bottom, 0 = transient
    std::vector<char> kind(n, 0);
    for (std::size_t c = 0; c < scc.components.size(); ++c) {
        if (!scc.is_bottom[c]) continue;
        const char k = classify_scc(scc.components[c], product.pairs()) == Verdict::Good ? 1 : 2;
        for (StateId s : scc.components[c]) kind[s] = k;
    }

    // States that reach a good bottom state at all.
    std::vector<std::vector<StateId>> reverse(n);
    for (StateId s = 0; s < n; ++s)
        for (const auto& t : product.successors(s)) reverse[t.target].push_back(s);
    std::vector<char> reaches(n, 0);
    std::deque<StateId> queue;
    for (StateId s = 0; s < n; ++s)
        if (kind[s] == 1) {
            reaches[s] = 1;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        const StateId s = queue.front();
        queue.pop_front();
        for (StateId p : reverse[s])
            if (!reaches[p]) {
                reaches[p] = 1;
                queue.push_back(p);
            }
    }

    std::vector<double> x(n, 0.0);
    std::vector<StateId> unknowns;
    std::vector<std::uint32_t> slot(n, std::numeric_limits<std::uint32_t>::max());
    for (StateId s = 0; s < n; ++s) {
        if (kind[s] == 1) x[s] = 1.0;
        if (kind[s] == 0 && reaches[s]) {
            slot[s] = static_cast<std::uint32_t>(unknowns.size());
            unknowns.push_back(s);
        }
    }
    const std::size_t m = unknowns.size();
    if (m == 0) return x;

    if (solver == LinearSolver::Automatic)
        solver = m <= kDenseLimit ? LinearSolver::Dense : LinearSolver::Iterative;

    if (solver == LinearSolver::Dense) {
        std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
        std::vector<double> b(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            a[i][i] = 1.0;
            for (const auto& t : product.successors(unknowns[i])) {
                if (slot[t.target] != std::numeric_limits<std::uint32_t>::max())
                    a[i][slot[t.target]] -= t.probability;
                else
                    b[i] += t.probability * x[t.target];
            }
        }
        const auto solution = solve_dense(std::move(a), std::move(b));
        for (std::size_t i = 0; i < m; ++i) x[unknowns[i]] = std::clamp(solution[i], 0.0, 1.0);
        return x;
    }

    // Gauss-Seidel from below; converges monotonically for absorbing systems.
    constexpr std::size_t kMaxSweeps = 10'000'000;
    for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double change = 0.0;
        for (StateId s : unknowns) {
            double value = 0.0;
            for (const auto& t : product.successors(s)) value += t.probability * x[t.target];
            change = std::max(change, std::abs(value - x[s]));
            x[s] = value;
        }
        if (change < 1e-12) return x;
    }
    throw InternalError("value iteration did not converge");
}

double satisfaction_probability(const ProductChain& product, LinearSolver solver) {
    const auto x = good_reachability(product, solver);
    double p = 0.0;
    for (const auto& init : product.initial()) p += init.probability * x[init.target];
    return p;
}

StructuralParams structural_params(const ProductChain& product) {
    return {product.num_states(), product.p_min(), scc_decompose(product).max_component_size()};
}

namespace {

/// Shortest path (ties: smallest successor id first) from `source` to a state
/// satisfying `is_target`, excluding `source`; returns the states after
/// `source`. With `allow_empty`, a source that is itself a target yields {}.
template <typename Pred>
std::optional<std::vector<StateId>> shortest_path(const ProductChain& product, StateId source,
                                                  Pred is_target, bool allow_empty) {
    if (allow_empty && is_target(source)) return std::vector<StateId>{};
    constexpr auto kNone = std::numeric_limits<StateId>::max();
    std::vector<StateId> parent(product.num_states(), kNone);
    std::vector<char> seen(product.num_states(), 0);
    std::deque<StateId> queue{source};
    // The source is not marked seen so that a cycle back to it counts.
    while (!queue.empty()) {
        const StateId s = queue.front();
        queue.pop_front();
        std::vector<StateId> next;
        for (const auto& t : product.successors(s)) next.push_back(t.target);
        std::sort(next.begin(), next.end());
        for (StateId t : next) {
            if (seen[t]) continue;
            seen[t] = 1;
            parent[t] = s;
            if (is_target(t)) {
                std::vector<StateId> path{t};
                for (StateId cur = s; cur != source; cur = parent[cur]) path.push_back(cur);
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(t);
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<StateId> witness_good_path(const ProductChain& product) {
    const auto scc = scc_decompose(product);
    const auto pairs = product.pairs();

    std::optional<std::size_t> good;
    for (std::size_t c = 0; c < scc.components.size() && !good; ++c)
        if (scc.is_bottom[c] && classify_scc(scc.components[c], pairs) == Verdict::Good) good = c;
    if (!good) throw PreconditionError("product has no good BSCC");
    const auto& bscc = scc.components[*good];
    std::vector<char> in_bscc(product.num_states(), 0);
    for (StateId s : bscc) in_bscc[s] = 1;

    // Inf-states of the first pair that certifies the BSCC as good.
    std::vector<char> target(product.num_states(), 0);
    for (const auto& pair : pairs) {
        const bool avoids_fin =
            std::none_of(bscc.begin(), bscc.end(), [&](StateId s) { return pair.fin[s] != 0; });
        const bool meets_inf =
            std::any_of(bscc.begin(), bscc.end(), [&](StateId s) { return pair.inf[s] != 0; });
        if (avoids_fin && meets_inf) {
            for (StateId s : bscc) target[s] = pair.inf[s];
            break;
        }
    }

    std::vector<StateId> initial;
    for (const auto& t : product.initial()) initial.push_back(t.target);
    std::sort(initial.begin(), initial.end());

    // Simple path from an initial state to an inf-state of the BSCC.
    std::vector<StateId> path;
    for (StateId s0 : initial) {
        auto tail = shortest_path(product, s0, [&](StateId s) { return target[s] != 0; }, true);
        if (tail) {
            path.push_back(s0);
            path.insert(path.end(), tail->begin(), tail->end());
            break;
        }
    }
    if (path.empty()) throw InternalError("good BSCC unreachable from the initial states");

    // Close the lasso by a shortest path back into the support.
    {
        std::vector<char> support(product.num_states(), 0);
        for (StateId s : path) support[s] = 1;
        auto back = shortest_path(product, path.back(), [&](StateId s) { return support[s] != 0; },
                                  false);
        if (!back) throw InternalError("no cycle inside a bottom SCC");
        path.insert(path.end(), back->begin(), back->end());
    }

    // Grow the candidate until it is the whole BSCC.
    for (;;) {
        const auto candidate = naive_candidate(path, pairs);
        if (!candidate) throw InternalError("lasso without candidate");
        if (candidate->members == bscc) return path;
        std::vector<char> in_candidate(product.num_states(), 0);
        for (StateId s : candidate->members) in_candidate[s] = 1;
        auto out = shortest_path(
            product, path.back(), [&](StateId s) { return in_bscc[s] && !in_candidate[s]; }, false);
        if (!out) throw InternalError("BSCC not strongly connected");
        path.insert(path.end(), out->begin(), out->end());
        auto back = shortest_path(product, path.back(),
                                  [&](StateId s) { return in_candidate[s] != 0; }, false);
        if (!back) throw InternalError("BSCC not strongly connected");
        path.insert(path.end(), back->begin(), back->end());
    }
}

}  // namespace resetmon

#pragma once

#include <span>
#include <vector>

#include "resetmon/product.hpp"

namespace resetmon {

struct SccDecomposition {
    /// Each component sorted ascending; components ordered by smallest member.
    std::vector<std::vector<StateId>> components;
    std::vector<bool> is_bottom;
    std::vector<std::uint32_t> component_of;

    std::size_t max_component_size() const;
};

/// Iterative Tarjan over an adjacency list.
SccDecomposition scc_decompose(std::span<const std::vector<StateId>> adjacency);
SccDecomposition scc_decompose(const ProductChain& product);

enum class LinearSolver { Automatic, Dense, Iterative };

/// Probability of reaching a good BSCC from each product state.
std::vector<double> good_reachability(const ProductChain& product,
                                      LinearSolver solver = LinearSolver::Automatic);

/// p_phi: probability, from the initial distribution, of reaching a good BSCC.
double satisfaction_probability(const ProductChain& product,
                                LinearSolver solver = LinearSolver::Automatic);

struct StructuralParams {
    std::size_t n;
    double p_min;
    std::size_t mxsc;
};

StructuralParams structural_params(const ProductChain& product);

/// Path from an initial state whose candidate is a good BSCC and none of
/// whose prefixes has a bad candidate. Throws PreconditionError when the
/// product has no good BSCC. Shortest paths break ties by smallest id.
std::vector<StateId> witness_good_path(const ProductChain& product);

}  // namespace resetmon

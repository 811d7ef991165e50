#pragma once

#include "resetmon/graph_analysis.hpp"

namespace resetmon {

struct TheoreticalBounds {
    /// E(R) <= 1 / (p_phi (1 - eps)).
    double expected_resets;
    /// E(T) bound for the bold monitor with a fixed alpha >= alpha0.
    double expected_steps_fixed;
    /// E(T) bound for the bold monitor with alpha_j = j, after substituting
    /// j_min <= 1/p_min.
    double expected_steps_general;
    /// c * alpha with c = 2n(n - log2 eps) mxsc p_min^-mxsc: expected length of
    /// one reset sample.
    double per_sample_steps;
    double j_min_bound;
};

/// Throws ConfigError unless alpha >= alpha0(p_min), eps in (0,1) and
/// p_phi in (0,1]. All logarithms base 2.
TheoreticalBounds theoretical_bounds(const StructuralParams& params, double p_phi, double alpha,
                                     double epsilon);

}  // namespace resetmon

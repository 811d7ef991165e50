#include "resetmon/bounds.hpp"

#include <cmath>

#include "resetmon/errors.hpp"
#include "resetmon/monitor.hpp"

namespace resetmon {

TheoreticalBounds theoretical_bounds(const StructuralParams& params, double p_phi, double alpha,
                                     double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0,1)");
    if (!(p_phi > 0.0 && p_phi <= 1.0)) throw ConfigError("p_phi must lie in (0,1]");
    if (params.n == 0 || params.mxsc == 0) throw ConfigError("empty product");
    if (!(alpha >= alpha0(params.p_min)))
        throw ConfigError("alpha below alpha0(p_min) = " + std::to_string(alpha0(params.p_min)));

    const double n = static_cast<double>(params.n);
    const double mxsc = static_cast<double>(params.mxsc);
    const double success = p_phi * (1.0 - epsilon);
    // c = 2 n (n - log eps) mxsc p_min^-mxsc
    const double c = 2.0 * n * (n - std::log2(epsilon)) * mxsc * std::pow(1.0 / params.p_min, mxsc);

    TheoreticalBounds b{};
    b.expected_resets = 1.0 / success;
    b.per_sample_steps = c * alpha;
    b.expected_steps_fixed = b.per_sample_steps / success;
    const double inv_pmin = 1.0 / params.p_min;
    b.expected_steps_general =
        (inv_pmin * inv_pmin + inv_pmin / success + 1.0 / (success * success)) * c;
    b.j_min_bound = inv_pmin;
    return b;
}

}  // namespace resetmon

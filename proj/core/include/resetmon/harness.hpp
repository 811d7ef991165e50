#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resetmon/bounds.hpp"
#include "resetmon/graph_analysis.hpp"
#include "resetmon/monitor.hpp"
#include "resetmon/product.hpp"

namespace resetmon {

/// Per-trial RNG seed derived from the base seed and the trial index.
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial);

/// Exact ground truth used only by the harness, never by monitors.
class BsccOracle {
public:
    explicit BsccOracle(const ProductChain& product);

    bool in_bottom(StateId s) const { return bottom_size_[s] != 0; }
    bool in_good_bottom(StateId s) const { return good_[s] != 0; }
    std::size_t bottom_size(StateId s) const { return bottom_size_[s]; }
    const SccDecomposition& decomposition() const noexcept { return scc_; }

private:
    SccDecomposition scc_;
    std::vector<std::uint32_t> bottom_size_;
    std::vector<char> good_;
};

enum class TrialOutcome { AcceptedGood, Cutoff };

const char* to_string(TrialOutcome o) noexcept;

/// One sample: the path between two resets (or after the last one).
struct SampleRecord {
    std::uint64_t steps_undefined = 0;  // prefixes with no candidate
    std::uint64_t steps_candidate = 0;  // prefixes with a candidate
    bool reset = false;
    /// Whether the sampled run satisfies the property: known for accepted
    /// samples, and for reset samples when shadow continuation is enabled.
    std::optional<bool> run_satisfies;

    std::uint64_t steps() const noexcept { return steps_undefined + steps_candidate; }
    friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

struct TrialStats {
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    std::uint64_t resets = 0;
    /// Steps until the last reset: sum of the reset samples' steps.
    std::uint64_t total_steps = 0;
    std::uint64_t steps_undefined = 0;
    std::uint64_t steps_candidate = 0;
    /// Steps of the final, unreset sample.
    std::uint64_t final_steps = 0;
    TrialOutcome outcome = TrialOutcome::Cutoff;
    std::vector<StateId> final_candidate;
    std::vector<SampleRecord> samples;  // includes the final sample
    double wall_time_s = 0.0;
};

struct ExperimentConfig {
    std::string model = "model";
    std::string property = "property";
    MonitorConfig monitor;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t max_steps = 10'000'000;
    /// After each reset, keep walking (monitor-free, separate RNG stream)
    /// until a BSCC is reached to learn whether the aborted run was good.
    bool shadow_continuation = false;
    unsigned threads = 1;
};

struct Aggregates {
    std::uint64_t trials = 0;
    double mean_resets = 0.0;
    double var_resets = 0.0;
    double mean_steps = 0.0;
    double var_steps = 0.0;
    /// sum T / sum R; undefined when no trial reset.
    std::optional<double> steps_per_reset;
    std::uint64_t accepted = 0;
    std::uint64_t cutoffs = 0;
    bool degenerate = false;

    friend bool operator==(const Aggregates&, const Aggregates&) = default;
};

Aggregates aggregate(const std::vector<TrialStats>& trials);

struct ExperimentReport {
    ExperimentConfig config;
    StructuralParams params{};
    double p_phi = 0.0;
    std::optional<TheoreticalBounds> bounds;
    std::vector<TrialStats> trials;
    Aggregates aggregates;
};

/// Runs independent trials of the monitor on the product. A trial ends
/// AcceptedGood once the candidate is a whole good BSCC with strength >= 1,
/// or Cutoff after max_steps steps. Results are independent of `threads`.
ExperimentReport run_trials(const ProductChain& product, const ExperimentConfig& config);

/// Single trial with an explicit oracle; the building block of run_trials.
TrialStats run_trial(const ProductChain& product, const BsccOracle& oracle,
                     const ExperimentConfig& config, std::uint64_t trial);

}  // namespace resetmon

#include "resetmon/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <thread>

#include "resetmon/errors.hpp"
#include "resetmon/tracker.hpp"

namespace resetmon {

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) {
    // splitmix64 finalizer
    std::uint64_t z = base_seed + trial * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

BsccOracle::BsccOracle(const ProductChain& product)
    : scc_(scc_decompose(product)),
      bottom_size_(product.num_states(), 0),
      good_(product.num_states(), 0) {
    for (std::size_t c = 0; c < scc_.components.size(); ++c) {
        if (!scc_.is_bottom[c]) continue;
        const auto& members = scc_.components[c];
        const bool good = classify_scc(members, product.pairs()) == Verdict::Good;
        for (StateId s : members) {
            bottom_size_[s] = static_cast<std::uint32_t>(members.size());
            good_[s] = good ? 1 : 0;
        }
    }
}

const char* to_string(TrialOutcome o) noexcept {
    return o == TrialOutcome::AcceptedGood ? "accepted_good" : "cutoff";
}

namespace {

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

StateId sample(std::span<const Transition> dist, std::mt19937_64& rng) {
    double u = uniform(rng);
    for (const auto& t : dist) {
        if (u < t.probability) return t.target;
        u -= t.probability;
    }
    return dist.back().target;  // rounding slack
}

}  // namespace

TrialStats run_trial(const ProductChain& product, const BsccOracle& oracle,
                     const ExperimentConfig& config, std::uint64_t trial) {
    const auto started = std::chrono::steady_clock::now();
    TrialStats stats;
    stats.trial = trial;
    stats.seed = trial_seed(config.seed, trial);
    std::mt19937_64 rng(stats.seed);
    std::mt19937_64 shadow_rng(trial_seed(~stats.seed, trial));

    Monitor monitor(config.monitor);
    CandidateTracker tracker(product);
    SampleRecord current;
    std::uint64_t steps = 0;
    StateId state = sample(product.initial(), rng);

    while (true) {
        tracker.step(state);
        ++steps;
        if (tracker.has_candidate())
            ++current.steps_candidate;
        else
            ++current.steps_undefined;

        Observation obs;
        obs.has_candidate = tracker.has_candidate();
        if (obs.has_candidate) {
            obs.verdict = tracker.verdict();
            obs.candidate_index = tracker.candidate_index();
            obs.strength = tracker.strength();
        }
        const MonitorVerdict verdict = monitor.step(obs);

        if (verdict.action == Action::Reset) {
            current.reset = true;
            if (config.shadow_continuation) {
                StateId s = state;
                for (std::uint64_t k = 0; k < config.max_steps && !oracle.in_bottom(s); ++k)
                    s = sample(product.successors(s), shadow_rng);
                if (oracle.in_bottom(s)) current.run_satisfies = oracle.in_good_bottom(s);
            }
            ++stats.resets;
            stats.total_steps += current.steps();
            stats.steps_undefined += current.steps_undefined;
            stats.steps_candidate += current.steps_candidate;
            stats.samples.push_back(current);
            current = SampleRecord{};
            tracker.reset();
            if (steps >= config.max_steps) break;
            state = sample(product.initial(), rng);
            continue;
        }

        if (obs.has_candidate && obs.strength >= 1 && oracle.in_good_bottom(state) &&
            tracker.candidate_size() == oracle.bottom_size(state)) {
            stats.outcome = TrialOutcome::AcceptedGood;
            stats.final_candidate = tracker.candidate_members();
            current.run_satisfies = true;
            break;
        }
        if (steps >= config.max_steps) break;
        state = sample(product.successors(state), rng);
    }
    stats.final_steps = current.steps();
    stats.samples.push_back(current);
    stats.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return stats;
}

Aggregates aggregate(const std::vector<TrialStats>& trials) {
    Aggregates a;
    a.trials = trials.size();
    if (trials.empty()) return a;
    const double n = static_cast<double>(trials.size());
    double sum_r = 0, sum_t = 0;
    for (const auto& t : trials) {
        sum_r += static_cast<double>(t.resets);
        sum_t += static_cast<double>(t.total_steps);
        if (t.outcome == TrialOutcome::AcceptedGood)
            ++a.accepted;
        else
            ++a.cutoffs;
    }
    a.mean_resets = sum_r / n;
    a.mean_steps = sum_t / n;
    if (trials.size() > 1) {
        double ss_r = 0, ss_t = 0;
        for (const auto& t : trials) {
            const double dr = static_cast<double>(t.resets) - a.mean_resets;
            const double dt = static_cast<double>(t.total_steps) - a.mean_steps;
            ss_r += dr * dr;
            ss_t += dt * dt;
        }
        a.var_resets = ss_r / (n - 1);
        a.var_steps = ss_t / (n - 1);
    }
    if (sum_r > 0) a.steps_per_reset = sum_t / sum_r;
    a.degenerate = 2 * a.cutoffs > a.trials;
    return a;
}

ExperimentReport run_trials(const ProductChain& product, const ExperimentConfig& config) {
    config.monitor.validate();
    if (config.max_steps == 0) throw ConfigError("max_steps must be positive");

    ExperimentReport report;
    report.config = config;
    report.params = structural_params(product);
    report.p_phi = satisfaction_probability(product);
    try {
        const double alpha = config.monitor.kind == MonitorKind::BoldFixed
                                 ? config.monitor.alpha
                                 : alpha0(report.params.p_min);
        report.bounds =
            theoretical_bounds(report.params, report.p_phi, alpha, config.monitor.epsilon);
    } catch (const ConfigError&) {
        report.bounds.reset();  // p_phi = 0 or alpha below alpha0: no guarantee applies
    }

    const BsccOracle oracle(product);
    report.trials.resize(config.trials);
    const unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(std::max(1u, config.threads), std::max<std::uint64_t>(1, config.trials)));
    if (workers <= 1) {
        for (std::uint64_t k = 0; k < config.trials; ++k)
            report.trials[k] = run_trial(product, oracle, config, k);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::uint64_t k = next++; k < config.trials; k = next++)
                        report.trials[k] = run_trial(product, oracle, config, k);
                } catch (...) {
                    errors[w] = std::current_exception();
                    next = config.trials;
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    report.aggregates = aggregate(report.trials);
    return report;
}

}  // namespace resetmon

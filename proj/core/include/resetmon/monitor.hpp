#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resetmon/product.hpp"

namespace resetmon {

enum class MonitorKind { Cautious, BoldFixed, BoldGeneral };
enum class AlphaSchedule { Linear, Exponential };

const char* to_string(MonitorKind k) noexcept;
const char* to_string(AlphaSchedule s) noexcept;

/// max{1, -1/log2(1 - p_min)}; 1 for p_min = 1. ConfigError outside (0, 1].
double alpha0(double p_min);

/// alpha * (i - log2 epsilon), never rounded.
double threshold(std::uint64_t candidate_index, double alpha, double epsilon);

/// alpha_j for the j-th sample: j (Linear) or 2^j (Exponential).
double schedule_alpha(AlphaSchedule schedule, std::uint64_t sample);

struct MonitorConfig {
    MonitorKind kind = MonitorKind::Cautious;
    double alpha = 1.0;
    double epsilon = 0.5;
    AlphaSchedule schedule = AlphaSchedule::Linear;
    /// Known lower bound on p_min, if any (BoldFixed).
    std::optional<double> p_min;

    static MonitorConfig cautious();
    static MonitorConfig bold(double alpha, double epsilon, std::optional<double> p_min = {});
    static MonitorConfig bold_general(AlphaSchedule schedule, double epsilon);

    /// Throws ConfigError on invalid parameters; returns warnings (e.g. a
    /// BoldFixed alpha that cannot be checked against an unknown p_min).
    std::vector<std::string> validate() const;
};

/// What the monitor sees after each path extension.
struct Observation {
    bool has_candidate = false;
    Verdict verdict = Verdict::Bad;
    std::uint64_t candidate_index = 0;
    std::uint64_t strength = 0;
};

enum class Action { Continue, Reset };

struct MonitorVerdict {
    Action action;
    std::uint64_t candidate_index;
    std::uint64_t strength;
    std::optional<double> threshold;
};

/// Reset controller. Cautious resets on any bad candidate; the bold variants
/// wait until a bad candidate's strength reaches alpha (i - log2 eps), with
/// alpha fixed or taken from a per-sample schedule.
class Monitor {
public:
    explicit Monitor(MonitorConfig config);

    /// Throws ProtocolError for a defined candidate with index 0.
    MonitorVerdict step(const Observation& obs);

    /// 1-based number of the current sample (resets so far + 1).
    std::uint64_t sample_number() const noexcept { return sample_; }
    /// Alpha in force for the current sample; unused by Cautious.
    double current_alpha() const noexcept;
    const MonitorConfig& config() const noexcept { return config_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

private:
    MonitorConfig config_;
    std::vector<std::string> warnings_;
    std::uint64_t sample_ = 1;
};

}  // namespace resetmon

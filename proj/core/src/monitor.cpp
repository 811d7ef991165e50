#include "resetmon/monitor.hpp"

#include <cmath>
#include <sstream>

#include "resetmon/errors.hpp"

namespace resetmon {

const char* to_string(MonitorKind k) noexcept {
    switch (k) {
        case MonitorKind::Cautious: return "cautious";
        case MonitorKind::BoldFixed: return "bold";
        case MonitorKind::BoldGeneral: return "bold-general";
    }
    return "?";
}

const char* to_string(AlphaSchedule s) noexcept {
    switch (s) {
        case AlphaSchedule::Linear: return "linear";
        case AlphaSchedule::Exponential: return "exp";
    }
    return "?";
}

double alpha0(double p_min) {
    if (!(p_min > 0.0 && p_min <= 1.0)) throw ConfigError("p_min must lie in (0,1]");
    if (p_min == 1.0) return 1.0;
    return std::max(1.0, -1.0 / std::log2(1.0 - p_min));
}

double threshold(std::uint64_t candidate_index, double alpha, double epsilon) {
    return alpha * (static_cast<double>(candidate_index) - std::log2(epsilon));
}

double schedule_alpha(AlphaSchedule schedule, std::uint64_t sample) {
    const auto j = static_cast<double>(sample);
    return schedule == AlphaSchedule::Linear ? j : std::exp2(j);
}

MonitorConfig MonitorConfig::cautious() { return MonitorConfig{}; }

MonitorConfig MonitorConfig::bold(double alpha, double epsilon, std::optional<double> p_min) {
    MonitorConfig c;
    c.kind = MonitorKind::BoldFixed;
    c.alpha = alpha;
    c.epsilon = epsilon;
    c.p_min = p_min;
    return c;
}

MonitorConfig MonitorConfig::bold_general(AlphaSchedule schedule, double epsilon) {
    MonitorConfig c;
    c.kind = MonitorKind::BoldGeneral;
    c.schedule = schedule;
    c.epsilon = epsilon;
    return c;
}

std::vector<std::string> MonitorConfig::validate() const {
    std::vector<std::string> warnings;
    if (kind == MonitorKind::Cautious) return warnings;
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0,1)");
    if (kind == MonitorKind::BoldFixed) {
        if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be positive");
        if (p_min) {
            const double a0 = alpha0(*p_min);
            if (alpha < a0) {
                std::ostringstream msg;
                msg << "alpha " << alpha << " is below alpha0(p_min=" << *p_min << ") = " << a0;
                throw ConfigError(msg.str());
            }
        } else {
            std::ostringstream msg;
            msg << "p_min unknown; alpha " << alpha << " not checked against alpha0";
            warnings.push_back(msg.str());
        }
    }
    return warnings;
}

Monitor::Monitor(MonitorConfig config) : config_(std::move(config)), warnings_(config_.validate()) {}

double Monitor::current_alpha() const noexcept {
    if (config_.kind == MonitorKind::BoldGeneral) return schedule_alpha(config_.schedule, sample_);
    return config_.alpha;
}

MonitorVerdict Monitor::step(const Observation& obs) {
    if (obs.has_candidate && obs.candidate_index == 0)
        throw ProtocolError("defined candidate with index 0");
    MonitorVerdict v{Action::Continue, obs.candidate_index, obs.strength, std::nullopt};
    if (!obs.has_candidate) return v;

    const bool bad = obs.verdict == Verdict::Bad;
    if (config_.kind == MonitorKind::Cautious) {
        if (bad) v.action = Action::Reset;
    } else {
        const double t = threshold(obs.candidate_index, current_alpha(), config_.epsilon);
        v.threshold = t;
        if (bad && static_cast<double>(obs.strength) >= t) v.action = Action::Reset;
    }
    if (v.action == Action::Reset) ++sample_;
    return v;
}

}  // namespace resetmon

#include "resetmon/report.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

#include "resetmon/errors.hpp"
#include "text_util.hpp"

namespace resetmon {

using nlohmann::ordered_json;

namespace {

ordered_json optional_number(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<double> trial_ratio(const TrialStats& t) {
    if (t.resets == 0) return std::nullopt;
    return static_cast<double>(t.total_steps) / static_cast<double>(t.resets);
}

ordered_json to_json(const MonitorConfig& m) {
    ordered_json j;
    j["kind"] = to_string(m.kind);
    j["alpha"] = m.alpha;
    j["epsilon"] = m.epsilon;
    j["schedule"] = to_string(m.schedule);
    j["p_min"] = optional_number(m.p_min);
    return j;
}

ordered_json to_json(const Aggregates& a) {
    ordered_json j;
    j["trials"] = a.trials;
    j["mean_resets"] = a.mean_resets;
    j["var_resets"] = a.var_resets;
    j["mean_steps"] = a.mean_steps;
    j["var_steps"] = a.var_steps;
    j["steps_per_reset"] = optional_number(a.steps_per_reset);
    j["accepted"] = a.accepted;
    j["cutoffs"] = a.cutoffs;
    j["degenerate"] = a.degenerate;
    return j;
}

std::string emit_json(const ExperimentReport& r, const EmitOptions& options) {
    ordered_json j;
    j["schema"] = kReportSchema;
    ordered_json cfg;
    cfg["model"] = r.config.model;
    cfg["property"] = r.config.property;
    cfg["monitor"] = to_json(r.config.monitor);
    cfg["trials"] = r.config.trials;
    cfg["seed"] = r.config.seed;
    cfg["max_steps"] = r.config.max_steps;
    cfg["shadow_continuation"] = r.config.shadow_continuation;
    j["config"] = std::move(cfg);
    j["params"] = {{"n", r.params.n}, {"p_min", r.params.p_min}, {"mxsc", r.params.mxsc}};
    j["p_phi"] = r.p_phi;
    if (r.bounds) {
        const auto& b = *r.bounds;
        j["bounds"] = {{"expected_resets", b.expected_resets},
                       {"expected_steps_fixed", b.expected_steps_fixed},
                       {"expected_steps_general", b.expected_steps_general},
                       {"per_sample_steps", b.per_sample_steps},
                       {"j_min_bound", b.j_min_bound}};
    } else {
        j["bounds"] = nullptr;
    }
    j["aggregates"] = to_json(r.aggregates);

    ordered_json trials = ordered_json::array();
    for (const auto& t : r.trials) {
        ordered_json row;
        row["trial"] = t.trial;
        row["seed"] = t.seed;
        row["resets"] = t.resets;
        row["total_steps"] = t.total_steps;
        row["steps_undefined"] = t.steps_undefined;
        row["steps_candidate"] = t.steps_candidate;
        row["final_steps"] = t.final_steps;
        row["steps_per_reset"] = optional_number(trial_ratio(t));
        row["outcome"] = to_string(t.outcome);
        row["final_candidate"] = t.final_candidate;
        ordered_json samples = ordered_json::array();
        for (const auto& s : t.samples) {
            ordered_json sj;
            sj["undefined"] = s.steps_undefined;
            sj["candidate"] = s.steps_candidate;
            sj["reset"] = s.reset;
            sj["run_satisfies"] = s.run_satisfies ? ordered_json(*s.run_satisfies) : ordered_json(nullptr);
            samples.push_back(std::move(sj));
        }
        row["samples"] = std::move(samples);
        if (options.include_wall_time) row["wall_time_s"] = t.wall_time_s;
        trials.push_back(std::move(row));
    }
    j["trials"] = std::move(trials);
    return j.dump(2) + "\n";
}

std::string csv_number(const std::optional<double>& v) { return v ? format_double(*v) : "-"; }

std::string emit_csv(const ExperimentReport& r, const EmitOptions& options) {
    std::ostringstream out;
    out << "trial,seed,resets,total_steps,steps_undefined,steps_candidate,final_steps,"
           "steps_per_reset,outcome,final_candidate_size";
    if (options.include_wall_time) out << ",wall_time_s";
    out << '\n';
    for (const auto& t : r.trials) {
        out << t.trial << ',' << t.seed << ',' << t.resets << ',' << t.total_steps << ','
            << t.steps_undefined << ',' << t.steps_candidate << ',' << t.final_steps << ','
            << csv_number(trial_ratio(t)) << ',' << to_string(t.outcome) << ','
            << t.final_candidate.size();
        if (options.include_wall_time) out << ',' << format_double(t.wall_time_s);
        out << '\n';
    }
    if (!r.trials.empty()) {
        const auto& a = r.aggregates;
        out << "#aggregate,trials=" << a.trials << ",mean_resets=" << format_double(a.mean_resets)
            << ",var_resets=" << format_double(a.var_resets)
            << ",mean_steps=" << format_double(a.mean_steps)
            << ",var_steps=" << format_double(a.var_steps)
            << ",steps_per_reset=" << csv_number(a.steps_per_reset) << ",accepted=" << a.accepted
            << ",cutoffs=" << a.cutoffs << ",degenerate=" << (a.degenerate ? "true" : "false")
            << '\n';
    }
    return out.str();
}

MonitorKind parse_kind(const std::string& s) {
    if (s == "cautious") return MonitorKind::Cautious;
    if (s == "bold") return MonitorKind::BoldFixed;
    if (s == "bold-general") return MonitorKind::BoldGeneral;
    throw ParseError("E_REPORT", 0, 0, "unknown monitor kind '" + s + "'");
}

std::optional<double> read_optional(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

}  // namespace

std::string emit_report(const ExperimentReport& report, ReportFormat format,
                        const EmitOptions& options) {
    return format == ReportFormat::Json ? emit_json(report, options) : emit_csv(report, options);
}

ExperimentReport load_report_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("E_REPORT", 0, e.byte, e.what());
    }

    ExperimentReport r;
    Aggregates stored;
    try {
        if (j.at("schema").get<int>() != kReportSchema)
            throw ParseError("E_REPORT", 0, 0, "unsupported report schema");
        const auto& cfg = j.at("config");
        r.config.model = cfg.at("model").get<std::string>();
        r.config.property = cfg.at("property").get<std::string>();
        const auto& m = cfg.at("monitor");
        r.config.monitor.kind = parse_kind(m.at("kind").get<std::string>());
        r.config.monitor.alpha = m.at("alpha").get<double>();
        r.config.monitor.epsilon = m.at("epsilon").get<double>();
        r.config.monitor.schedule = m.at("schedule").get<std::string>() == "exp"
                                        ? AlphaSchedule::Exponential
                                        : AlphaSchedule::Linear;
        r.config.monitor.p_min = read_optional(m.at("p_min"));
        r.config.trials = cfg.at("trials").get<std::uint64_t>();
        r.config.seed = cfg.at("seed").get<std::uint64_t>();
        r.config.max_steps = cfg.at("max_steps").get<std::uint64_t>();
        r.config.shadow_continuation = cfg.at("shadow_continuation").get<bool>();

        const auto& p = j.at("params");
        r.params = {p.at("n").get<std::size_t>(), p.at("p_min").get<double>(),
                    p.at("mxsc").get<std::size_t>()};
        r.p_phi = j.at("p_phi").get<double>();
        if (const auto& b = j.at("bounds"); !b.is_null()) {
            r.bounds = TheoreticalBounds{b.at("expected_resets").get<double>(),
                                         b.at("expected_steps_fixed").get<double>(),
                                         b.at("expected_steps_general").get<double>(),
                                         b.at("per_sample_steps").get<double>(),
                                         b.at("j_min_bound").get<double>()};
        }

        for (const auto& row : j.at("trials")) {
            TrialStats t;
            t.trial = row.at("trial").get<std::uint64_t>();
            t.seed = row.at("seed").get<std::uint64_t>();
            t.resets = row.at("resets").get<std::uint64_t>();
            t.total_steps = row.at("total_steps").get<std::uint64_t>();
            t.steps_undefined = row.at("steps_undefined").get<std::uint64_t>();
            t.steps_candidate = row.at("steps_candidate").get<std::uint64_t>();
            t.final_steps = row.at("final_steps").get<std::uint64_t>();
            const auto outcome = row.at("outcome").get<std::string>();
            if (outcome == "accepted_good")
                t.outcome = TrialOutcome::AcceptedGood;
            else if (outcome == "cutoff")
                t.outcome = TrialOutcome::Cutoff;
            else
                throw ParseError("E_REPORT", 0, 0, "unknown outcome '" + outcome + "'");
            t.final_candidate = row.at("final_candidate").get<std::vector<StateId>>();
            for (const auto& sj : row.at("samples")) {
                SampleRecord s;
                s.steps_undefined = sj.at("undefined").get<std::uint64_t>();
                s.steps_candidate = sj.at("candidate").get<std::uint64_t>();
                s.reset = sj.at("reset").get<bool>();
                if (!sj.at("run_satisfies").is_null()) s.run_satisfies = sj.at("run_satisfies").get<bool>();
                t.samples.push_back(s);
            }
            if (row.contains("wall_time_s")) t.wall_time_s = row.at("wall_time_s").get<double>();
            r.trials.push_back(std::move(t));
        }

        const auto& a = j.at("aggregates");
        stored.trials = a.at("trials").get<std::uint64_t>();
        stored.mean_resets = a.at("mean_resets").get<double>();
        stored.var_resets = a.at("var_resets").get<double>();
        stored.mean_steps = a.at("mean_steps").get<double>();
        stored.var_steps = a.at("var_steps").get<double>();
        stored.steps_per_reset = read_optional(a.at("steps_per_reset"));
        stored.accepted = a.at("accepted").get<std::uint64_t>();
        stored.cutoffs = a.at("cutoffs").get<std::uint64_t>();
        stored.degenerate = a.at("degenerate").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("E_REPORT", 0, 0, e.what());
    }

    r.aggregates = aggregate(r.trials);
    const auto& c = r.aggregates;
    const bool ratio_ok = c.steps_per_reset.has_value() == stored.steps_per_reset.has_value() &&
                          (!c.steps_per_reset || close(*stored.steps_per_reset, *c.steps_per_reset));
    if (c.trials != stored.trials || c.accepted != stored.accepted ||
        c.cutoffs != stored.cutoffs || c.degenerate != stored.degenerate ||
        !close(stored.mean_resets, c.mean_resets) || !close(stored.var_resets, c.var_resets) ||
        !close(stored.mean_steps, c.mean_steps) || !close(stored.var_steps, c.var_steps) || !ratio_ok)
        throw ParseError("E_AGGREGATE", 0, 0, "aggregates do not match the trial rows");
    return r;
}

}  // namespace resetmon

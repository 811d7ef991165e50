#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "model_loader.hpp"
#include "resetmon/errors.hpp"
#include "resetmon/graph_analysis.hpp"
#include "resetmon/harness.hpp"
#include "resetmon/models.hpp"
#include "resetmon/report.hpp"

namespace {

using namespace resetmon;

constexpr int kExitConfig = 2;
constexpr int kExitParse = 3;
constexpr int kExitDegenerate = 4;

struct MonitorOptions {
    std::string kind = "cautious";
    double alpha = 1.0;
    double epsilon = 0.5;
    std::string schedule = "linear";
    std::optional<double> p_min;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--monitor", kind, "cautious, bold or bold-general")
            ->check(CLI::IsMember({"cautious", "bold", "bold-general"}));
        cmd.add_option("--alpha", alpha, "boldness for --monitor bold");
        cmd.add_option("--epsilon", epsilon, "error budget for the bold monitors");
        cmd.add_option("--schedule", schedule, "alpha schedule for bold-general")
            ->check(CLI::IsMember({"linear", "exp"}));
        cmd.add_option("--p-min", p_min, "known lower bound on transition probabilities");
    }

    MonitorConfig config() const {
        if (kind == "cautious") return MonitorConfig::cautious();
        if (kind == "bold") return MonitorConfig::bold(alpha, epsilon, p_min);
        return MonitorConfig::bold_general(
            schedule == "exp" ? AlphaSchedule::Exponential : AlphaSchedule::Linear, epsilon);
    }
};

struct TrialOptions {
    std::uint64_t trials = 100;
    std::uint64_t seed = 1;
    std::uint64_t max_steps = 10'000'000;
    unsigned threads = 1;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--trials", trials, "number of independent trials");
        cmd.add_option("--seed", seed, "base seed");
        cmd.add_option("--max-steps", max_steps, "per-trial step cutoff");
        cmd.add_option("--threads", threads, "worker threads (results do not depend on it)");
    }
};

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

void print_warnings(const MonitorConfig& config) {
    for (const auto& w : config.validate()) std::cerr << "warning: " << w << '\n';
}

int cmd_run(const std::string& model_spec, const std::string& prop_spec,
            const MonitorOptions& mon, const TrialOptions& opts, bool shadow,
            const std::string& out_path, const std::string& format, bool timing) {
    const auto chain = cli::load_model(model_spec);
    const auto dra = cli::load_property(prop_spec);
    const auto product = build_product(chain, dra);

    ExperimentConfig config;
    config.model = model_spec;
    config.property = prop_spec;
    config.monitor = mon.config();
    config.trials = opts.trials;
    config.seed = opts.seed;
    config.max_steps = opts.max_steps;
    config.threads = opts.threads;
    config.shadow_continuation = shadow;
    print_warnings(config.monitor);

    const auto report = run_trials(product, config);
    write_output(out_path, emit_report(report, format == "csv" ? ReportFormat::Csv : ReportFormat::Json,
                                       EmitOptions{timing}));
    if (report.aggregates.degenerate) {
        std::cerr << "degenerate: " << report.aggregates.cutoffs << " of " << report.aggregates.trials
                  << " trials hit the step cutoff\n";
        return kExitDegenerate;
    }
    return 0;
}

int cmd_validate(const std::string& model_spec, const std::string& prop_spec, double alpha,
                 double epsilon) {
    const auto chain = cli::load_model(model_spec);
    const auto dra = cli::load_property(prop_spec);
    const auto product = build_product(chain, dra);
    const auto params = structural_params(product);
    const double p_phi = satisfaction_probability(product);
    const auto scc = scc_decompose(product);

    std::cout << "chain states: " << chain.num_states() << '\n'
              << "product states: " << params.n << '\n'
              << "p_min: " << params.p_min << '\n'
              << "mxsc: " << params.mxsc << '\n'
              << "p_phi: " << std::setprecision(12) << p_phi << '\n'
              << "alpha0: " << alpha0(params.p_min) << '\n';
    std::cout << "bsccs:\n";
    for (std::size_t c = 0; c < scc.components.size(); ++c) {
        if (!scc.is_bottom[c]) continue;
        const auto& members = scc.components[c];
        std::cout << "  " << to_string(classify_scc(members, product.pairs())) << " {";
        for (std::size_t k = 0; k < members.size(); ++k) {
            const auto ps = product.state(members[k]);
            std::cout << (k ? ", " : "") << '(' << chain.name(ps.chain_state) << ", q"
                      << ps.automaton_state << ')';
        }
        std::cout << "}\n";
    }
    if (p_phi <= 0.0) {
        std::cout << "bounds: n/a (p_phi = 0)\n";
        return 0;
    }
    const double a = alpha > 0.0 ? alpha : alpha0(params.p_min);
    const auto b = theoretical_bounds(params, p_phi, a, epsilon);
    std::cout << "bounds (alpha=" << a << ", epsilon=" << epsilon << "):\n"
              << "  E(R) <= " << b.expected_resets << '\n'
              << "  steps per reset sample <= " << b.per_sample_steps << '\n'
              << "  E(T) bold fixed <= " << b.expected_steps_fixed << '\n'
              << "  E(T) bold linear schedule <= " << b.expected_steps_general << '\n';
    return 0;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    try {
        if (dots != std::string::npos) {
            const auto a = std::stoul(s.substr(0, dots));
            const auto b = std::stoul(s.substr(dots + 2));
            if (a >= 1 && a <= b) return {a, b};
        } else {
            const auto a = std::stoul(s);
            if (a >= 1) return {a, a};
        }
    } catch (const std::exception&) {
    }
    throw ConfigError("bad --n-range '" + s + "' (expected a..b with 1 <= a <= b)");
}

int cmd_bench_family(const std::string& family, const std::string& range,
                     const std::string& prop_spec, const MonitorOptions& mon,
                     const TrialOptions& opts, const std::string& out_path,
                     const std::string& format) {
    const auto [lo, hi] = parse_range(range);
    const auto dra = cli::load_property(prop_spec);
    print_warnings(mon.config());

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::ostringstream csv;
    csv << "family,n,p_phi,trials,mean_resets,mean_steps,se_steps,steps_per_reset,"
           "bound_resets,bound_steps_fixed,bound_steps_general,cutoffs\n";
    bool degenerate = false;
    for (std::size_t n = lo; n <= hi; ++n) {
        const auto chain = family == "fig1" ? gen_fig1(n) : gen_fig2(n);
        const auto product = build_product(chain, dra);
        ExperimentConfig config;
        config.model = "builtin:" + family + ":" + std::to_string(n);
        config.property = prop_spec;
        config.monitor = mon.config();
        config.trials = opts.trials;
        config.seed = opts.seed;
        config.max_steps = opts.max_steps;
        config.threads = opts.threads;
        const auto report = run_trials(product, config);
        const auto& a = report.aggregates;
        degenerate = degenerate || a.degenerate;
        const double se = a.trials ? std::sqrt(a.var_steps / static_cast<double>(a.trials)) : 0.0;

        nlohmann::ordered_json row;
        row["family"] = family;
        row["n"] = n;
        row["p_phi"] = report.p_phi;
        row["trials"] = a.trials;
        row["mean_resets"] = a.mean_resets;
        row["mean_steps"] = a.mean_steps;
        row["se_steps"] = se;
        row["steps_per_reset"] = a.steps_per_reset ? nlohmann::ordered_json(*a.steps_per_reset) : nullptr;
        if (report.bounds) {
            row["bound_resets"] = report.bounds->expected_resets;
            row["bound_steps_fixed"] = report.bounds->expected_steps_fixed;
            row["bound_steps_general"] = report.bounds->expected_steps_general;
        } else {
            row["bound_resets"] = row["bound_steps_fixed"] = row["bound_steps_general"] = nullptr;
        }
        row["cutoffs"] = a.cutoffs;
        rows.push_back(row);

        auto cell = [](const nlohmann::ordered_json& v) {
            return v.is_null() ? std::string("-") : v.dump();
        };
        csv << family << ',' << n << ',' << cell(row["p_phi"]) << ',' << a.trials << ','
            << cell(row["mean_resets"]) << ',' << cell(row["mean_steps"]) << ','
            << cell(row["se_steps"]) << ',' << cell(row["steps_per_reset"]) << ','
            << cell(row["bound_resets"]) << ',' << cell(row["bound_steps_fixed"]) << ','
            << cell(row["bound_steps_general"]) << ',' << a.cutoffs << '\n';
    }
    write_output(out_path, format == "csv" ? csv.str() : rows.dump(2) + "\n");
    return degenerate ? kExitDegenerate : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reset monitors for omega-regular properties of unknown Markov chains"};
    app.require_subcommand(1);

    std::string model, prop = "prop:Fp", out, format = "json", family, range;
    bool shadow = false, timing = false;
    MonitorOptions mon;
    TrialOptions opts;
    double v_alpha = 0.0, v_epsilon = 0.5;

    auto* run = app.add_subcommand("run", "run monitored trials and emit a report");
    run->add_option("--model", model, "chain file or builtin:fig1:<n> / fig2:<n> / random:<n>:<seed>")
        ->required();
    run->add_option("--prop", prop, "HOA file or prop:Fp|Gp|GFp|FGp|GFimpliesFG");
    mon.add_to(*run);
    opts.add_to(*run);
    run->add_option("--out", out, "output path (stdout if omitted)");
    run->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    run->add_flag("--shadow", shadow, "continue reset runs to a BSCC to record their outcome");
    run->add_flag("--timing", timing, "include per-trial wall time in the report");

    auto* validate = app.add_subcommand("validate", "print model statistics and theoretical bounds");
    validate->add_option("--model", model, "chain file or builtin model")->required();
    validate->add_option("--prop", prop, "HOA file or builtin property");
    validate->add_option("--alpha", v_alpha, "alpha for the bounds (default alpha0)");
    validate->add_option("--epsilon", v_epsilon, "epsilon for the bounds");

    auto* bench = app.add_subcommand("bench-family", "scaling table over a model family");
    bench->add_option("family", family, "fig1 or fig2")->required()->check(CLI::IsMember({"fig1", "fig2"}));
    bench->add_option("--n-range", range, "sizes a..b")->required();
    bench->add_option("--prop", prop, "HOA file or builtin property");
    mon.add_to(*bench);
    opts.add_to(*bench);
    bench->add_option("--out", out, "output path (stdout if omitted)");
    bench->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) return cmd_run(model, prop, mon, opts, shadow, out, format, timing);
        if (*validate) return cmd_validate(model, prop, v_alpha, v_epsilon);
        return cmd_bench_family(family, range, prop, mon, opts, out, format);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const GenerationError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

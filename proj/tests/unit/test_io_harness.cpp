#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "resetmon/errors.hpp"
#include "resetmon/formats.hpp"
#include "resetmon/harness.hpp"
#include "resetmon/models.hpp"
#include "resetmon/report.hpp"
#include "test_support.hpp"

namespace resetmon {
namespace {

std::string parse_code(std::string_view text, bool hoa = false) {
    try {
        if (hoa) parse_dra_hoa(text);
        else parse_chain(text);
    } catch (const ParseError& e) {
        return e.code();
    }
    return "ok";
}

ParseError expect_parse_error(std::string_view text, bool hoa = false) {
    try {
        if (hoa) parse_dra_hoa(text);
        else parse_chain(text);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no parse error for:\n" << text;
    return ParseError("none", 0, 0, "");
}

// ---- chain format ----

constexpr std::string_view kTwoStates = R"(mc 2 1
ap p
state 0 0 init=1
state 1 1 init=0 name=goal
0 0 1/2
0 1 0.5
1 1 1
)";

TEST(ParseChain, TwoStateExample) {
    const auto chain = parse_chain(kTwoStates);
    EXPECT_EQ(chain.num_states(), 2u);
    EXPECT_EQ(chain.propositions(), std::vector<std::string>{"p"});
    EXPECT_EQ(chain.label(0), 0u);
    EXPECT_EQ(chain.label(1), 1u);
    EXPECT_EQ(chain.initial(0), 1.0);
    EXPECT_EQ(chain.name(1), "goal");
    EXPECT_EQ(chain.name(0), "s0");
    ASSERT_EQ(chain.successors(0).size(), 2u);
    EXPECT_EQ(chain.successors(0)[0].probability, 0.5);
    EXPECT_EQ(chain.successors(0)[1].probability, 0.5);
}

TEST(ParseChain, CommentsAndBlankLines) {
    const auto chain = parse_chain("# header comment\nmc 1 0\n\nstate 0 init=1 # only state\n0 0 1\n");
    EXPECT_EQ(chain.num_states(), 1u);
    EXPECT_TRUE(chain.propositions().empty());
}

TEST(ParseChain, RowSumNamesTheState) {
    const auto e = expect_parse_error("mc 2 0\nstate 0 init=1 name=left\nstate 1 init=0\n0 1 0.9\n1 1 1\n");
    EXPECT_EQ(e.code(), "E_ROWSUM");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("left"), std::string::npos) << e.what();
}

TEST(ParseChain, EveryDiagnosticCode) {
    EXPECT_EQ(parse_code(""), "E_HEADER");
    EXPECT_EQ(parse_code("chain 1 0\n"), "E_HEADER");
    EXPECT_EQ(parse_code("mc 1 1\nstate 0 0 init=1\n0 0 1\n"), "E_HEADER");
    EXPECT_EQ(parse_code("mc 1 0\nstate 0 init=1\n0 0\n"), "E_SYNTAX");
    EXPECT_EQ(parse_code("mc 1 0\nstate 0\n0 0 1\n"), "E_SYNTAX");
    EXPECT_EQ(parse_code("mc 1 1\nap p\nstate 0 01 init=1\n0 0 1\n"), "E_SYNTAX");
    EXPECT_EQ(parse_code("mc 1 0\nstate 0 init=1\n0 0 x\n"), "E_PROB");
    EXPECT_EQ(parse_code("mc 1 0\nstate 0 init=1\n0 0 3/2\n"), "E_PROB");
    EXPECT_EQ(parse_code("mc 1 0\nstate 0 init=1\n0 0 1/0\n"), "E_PROB");
    EXPECT_EQ(parse_code("mc 1 0\nstate 0 init=1\n0 1 1\n"), "E_UNKNOWN_STATE");
    EXPECT_EQ(parse_code("mc 1 0\nstate 0 init=1\nstate 0 init=0\n0 0 1\n"), "E_DUP_STATE");
    EXPECT_EQ(parse_code("mc 2 0\nstate 0 init=1\n0 0 1\n1 1 1\n"), "E_MISSING_STATE");
    EXPECT_EQ(parse_code("mc 1 0\nstate 0 init=1\n0 0 1/2\n0 0 1/2\n"), "E_DUP_TRANSITION");
    EXPECT_EQ(parse_code("mc 2 0\nstate 0 init=1\nstate 1 init=0\n0 1 1\n1 0 0.5\n"), "E_ROWSUM");
    EXPECT_EQ(parse_code("mc 2 0\nstate 0 init=1\nstate 1 init=1/2\n0 1 1\n1 0 1\n"), "E_INITSUM");
}

TEST(ParseChain, PositionOfUnknownState) {
    const auto e = expect_parse_error("mc 1 0\nstate 0 init=1\n0   7 1\n");
    EXPECT_EQ(e.code(), "E_UNKNOWN_STATE");
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 5u);
}

TEST(SerializeChain, RoundTripOverGeneratedChains) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k) {
        RandomChainOptions options;
        options.palette = {0.5, 0.25, 0.125, 0.1, 0.2, 0.3};
        options.propositions = k % 2 ? std::vector<std::string>{"p", "q"} : std::vector<std::string>{"p"};
        const auto chain = gen_random(2 + rng() % 30, rng(), options);
        const auto text = serialize_chain(chain);
        const auto back = parse_chain(text);
        ASSERT_EQ(back, chain) << text;
        EXPECT_EQ(serialize_chain(back), text);
    }
    const auto fig1 = gen_fig1(3);
    EXPECT_EQ(parse_chain(serialize_chain(fig1)), fig1);
}

TEST(ParseChain, RationalsMatchDecimals) {
    const auto a = parse_chain("mc 2 0\nstate 0 init=1/3\nstate 1 init=2/3\n0 0 1/3\n0 1 2/3\n1 1 1\n");
    EXPECT_EQ(a.initial(0), 1.0 / 3.0);
    EXPECT_EQ(a.successors(0)[1].probability, 2.0 / 3.0);
}

// ---- HOA ----

bool same_language(const RabinAutomaton& a, const RabinAutomaton& b) {
    for (std::size_t lu = 0; lu <= 4; ++lu)
        for (std::size_t lv = 1; lv <= 4; ++lv)
            for (std::uint32_t bu = 0; bu < (1u << lu); ++bu)
                for (std::uint32_t bv = 0; bv < (1u << lv); ++bv) {
                    std::vector<Letter> u(lu), v(lv);
                    for (std::size_t k = 0; k < lu; ++k) u[k] = (bu >> k) & 1u;
                    for (std::size_t k = 0; k < lv; ++k) v[k] = (bv >> k) & 1u;
                    if (testing::dra_accepts(a, u, v) != testing::dra_accepts(b, u, v)) return false;
                }
    return true;
}

TEST(Hoa, RoundTripOfBuiltins) {
    for (const auto& name : builtin_dra_names()) {
        const auto dra = builtin_dra(name);
        EXPECT_EQ(parse_dra_hoa(to_hoa(dra, name)), dra) << to_hoa(dra, name);
    }
}

constexpr std::string_view kFp = R"(HOA: v1
name: "F p"  /* states swapped relative to the builtin */
States: 2
Start: 1
AP: 1 "p"
acc-name: Rabin 1
Acceptance: 2 Inf(1) & Fin(0)
--BODY--
State: 0 {1}
[t] 0
State: 1
[!0] 1
[0] 0
--END--
)";

TEST(Hoa, HandWrittenEventuallyP) {
    const auto dra = parse_dra_hoa(kFp);
    EXPECT_EQ(dra.num_states(), 2u);
    EXPECT_EQ(dra.initial(), 1u);
    ASSERT_EQ(dra.pairs().size(), 1u);
    EXPECT_TRUE(same_language(dra, builtin_dra("Fp")));
    EXPECT_FALSE(same_language(dra, builtin_dra("GFp")));
    // Products with Fig1 coincide up to renaming: same size and p_phi.
    const auto ours = build_product(gen_fig1(3), dra);
    const auto builtin = build_product(gen_fig1(3), builtin_dra("Fp"));
    EXPECT_EQ(ours.num_states(), builtin.num_states());
}

std::string with_body(std::string_view header, std::string_view body) {
    return "HOA: v1\nStates: 2\nStart: 0\nAP: 1 \"p\"\n" + std::string(header) + "--BODY--\n" +
           std::string(body) + "--END--\n";
}

constexpr std::string_view kRabin1 = "Acceptance: 2 Fin(0) & Inf(1)\n";
constexpr std::string_view kFpBody = "State: 0\n[!0] 0\n[0] 1\nState: 1 {1}\n[t] 1\n";

TEST(Hoa, Diagnostics) {
    EXPECT_EQ(parse_code(with_body(kRabin1, kFpBody), true), "ok");
    EXPECT_EQ(parse_code(with_body("Acceptance: 1 Inf(0)\n", "State: 0\n[t] 1\nState: 1 {0}\n[t] 1\n"), true),
              "E_HOA_ACCEPTANCE");
    EXPECT_EQ(parse_code(with_body(kRabin1, "State: 0\n[t] 0\n[0] 1\nState: 1 {1}\n[t] 1\n"), true),
              "E_HOA_NONDET");
    EXPECT_EQ(parse_code(with_body(kRabin1, "State: 0\n[0] 1\nState: 1 {1}\n[t] 1\n"), true),
              "E_HOA_INCOMPLETE");
    EXPECT_EQ(parse_code(with_body(kRabin1, "State: 0\n[!1] 0\n[1] 1\nState: 1 {1}\n[t] 1\n"), true),
              "E_HOA_AP");
    EXPECT_EQ(parse_code(with_body(kRabin1, "State: 0\n[t] 5\nState: 1 {1}\n[t] 1\n"), true), "E_HOA_STATE");
    EXPECT_EQ(parse_code("States: 2\n--BODY--\n--END--\n", true), "E_HOA_HEADER");
    EXPECT_EQ(parse_code(with_body(kRabin1, "State: [t] 0\n[t] 1\nState: 1 {1}\n[t] 1\n"), true), "E_HOA_BODY");
    EXPECT_EQ(parse_code(with_body(kRabin1, "State: 0\n[!0] 0 [0] 1\nState: 1 {1}\n[t] 1 ;\n"), true),
              "E_HOA_SYNTAX");
}

TEST(Hoa, MissingBodyHasPosition) {
    const auto text = "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 2 Fin(0) & Inf(1)\nState: 0 {1}\n[t] 0\n";
    const auto e = expect_parse_error(text, true);
    EXPECT_EQ(e.code(), "E_HOA_BODY");
    EXPECT_GT(e.line(), 0u);
}

// ---- harness and reports ----

ExperimentConfig bold_config(std::uint64_t trials, std::uint64_t seed) {
    ExperimentConfig config;
    config.model = "fig1:4";
    config.property = "Fp";
    config.monitor = MonitorConfig::bold(1.0, 0.5, 0.5);
    config.trials = trials;
    config.seed = seed;
    return config;
}

TEST(Harness, DeterministicAndThreadIndependent) {
    const auto product = build_product(gen_fig1(4), builtin_dra("Fp"));
    auto config = bold_config(200, 3);
    config.shadow_continuation = true;
    const auto a = emit_report(run_trials(product, config), ReportFormat::Json);
    const auto b = emit_report(run_trials(product, config), ReportFormat::Json);
    config.threads = 4;
    const auto c = emit_report(run_trials(product, config), ReportFormat::Json);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    config.seed = 4;
    EXPECT_NE(a, emit_report(run_trials(product, config), ReportFormat::Json));
}

TEST(Harness, TrialStatsInvariants) {
    const auto product = build_product(gen_fig1(4), builtin_dra("Fp"));
    const auto report = run_trials(product, bold_config(300, 11));
    for (const auto& t : report.trials) {
        std::uint64_t reset_steps = 0, resets = 0, undefined = 0, candidate = 0;
        ASSERT_FALSE(t.samples.empty());
        for (const auto& s : t.samples) {
            if (!s.reset) continue;
            reset_steps += s.steps();
            undefined += s.steps_undefined;
            candidate += s.steps_candidate;
            ++resets;
        }
        EXPECT_FALSE(t.samples.back().reset);
        EXPECT_EQ(t.total_steps, reset_steps);
        EXPECT_EQ(t.resets, resets);
        EXPECT_EQ(t.steps_undefined, undefined);
        EXPECT_EQ(t.steps_candidate, candidate);
        EXPECT_EQ(t.final_steps, t.samples.back().steps());
        EXPECT_EQ(t.samples.size(), t.resets + 1);
        EXPECT_EQ(t.outcome, TrialOutcome::AcceptedGood);
    }
}

TEST(Harness, ZeroTrialsGiveHeaderOnlyCsv) {
    const auto product = build_product(gen_fig2(3), builtin_dra("Fp"));
    const auto report = run_trials(product, bold_config(0, 1));
    EXPECT_TRUE(report.trials.empty());
    EXPECT_EQ(report.config.model, "fig1:4");
    const auto csv = emit_report(report, ReportFormat::Csv);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1);
    EXPECT_TRUE(csv.starts_with("trial,seed,resets,"));
    EXPECT_FALSE(report.aggregates.degenerate);
}

TEST(Report, JsonRoundTripPreservesAggregates) {
    const auto product = build_product(gen_fig2(5), builtin_dra("Fp"));
    auto config = bold_config(100, 21);
    config.monitor = MonitorConfig::cautious();
    config.shadow_continuation = true;
    const auto report = run_trials(product, config);
    const auto json = emit_report(report, ReportFormat::Json);
    const auto loaded = load_report_json(json);
    EXPECT_EQ(loaded.aggregates, report.aggregates);
    EXPECT_EQ(loaded.trials.size(), report.trials.size());
    EXPECT_EQ(emit_report(loaded, ReportFormat::Json), json);
}

TEST(Report, TamperedAggregatesAreRejected) {
    const auto product = build_product(gen_fig2(4), builtin_dra("Fp"));
    const auto json = emit_report(run_trials(product, bold_config(20, 2)), ReportFormat::Json);
    const auto key = json.find("\"mean_resets\": ");
    ASSERT_NE(key, std::string::npos);
    auto tampered = json;
    tampered.insert(key + 15, "1");
    try {
        load_report_json(tampered);
        FAIL() << "tampered report accepted";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.code(), "E_AGGREGATE");
    }
    try {
        load_report_json("{ not json");
        FAIL() << "malformed report accepted";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.code(), "E_REPORT");
    }
}

TEST(Report, CsvResetColumnSumsToMeanTimesN) {
    const auto product = build_product(gen_fig2(6), builtin_dra("Fp"));
    auto config = bold_config(150, 8);
    config.monitor = MonitorConfig::cautious();
    const auto report = run_trials(product, config);
    std::istringstream in(emit_report(report, ReportFormat::Csv));
    std::string line;
    std::getline(in, line);
    std::uint64_t sum = 0, rows = 0;
    bool saw_aggregate = false;
    while (std::getline(in, line)) {
        if (line.starts_with("#aggregate")) {
            saw_aggregate = true;
            EXPECT_NE(line.find("trials=150"), std::string::npos);
            continue;
        }
        std::istringstream fields(line);
        std::string field;
        for (int k = 0; k < 3; ++k) std::getline(fields, field, ',');
        sum += std::stoull(field);
        ++rows;
    }
    EXPECT_TRUE(saw_aggregate);
    EXPECT_EQ(rows, 150u);
    EXPECT_NEAR(static_cast<double>(sum), report.aggregates.mean_resets * 150.0, 1e-6);
}

TEST(Report, UndefinedRatioPrintsDash) {
    const auto product = build_product(gen_fig2(2), builtin_dra("Fp"));
    auto config = bold_config(5, 1);
    config.monitor = MonitorConfig::bold(100.0, 0.5, 0.5);  // never resets
    const auto report = run_trials(product, config);
    EXPECT_FALSE(report.aggregates.steps_per_reset.has_value());
    const auto csv = emit_report(report, ReportFormat::Csv);
    EXPECT_NE(csv.find(",-,accepted_good,"), std::string::npos) << csv;
    EXPECT_NE(csv.find("steps_per_reset=-"), std::string::npos) << csv;
    EXPECT_NE(emit_report(report, ReportFormat::Json).find("\"steps_per_reset\": null"), std::string::npos);
}

TEST(Harness, CutoffsFlagDegenerate) {
    const auto product = build_product(gen_fig1(6), builtin_dra("Fp"));
    auto config = bold_config(10, 1);
    config.max_steps = 3;
    const auto report = run_trials(product, config);
    EXPECT_GT(report.aggregates.cutoffs, 5u);
    EXPECT_TRUE(report.aggregates.degenerate);
    for (const auto& t : report.trials)
        if (t.outcome == TrialOutcome::Cutoff) EXPECT_LE(t.total_steps + t.final_steps, 3u);
}

TEST(Harness, Fig2BoldMeanResetsWithinBound) {
    const auto product = build_product(gen_fig2(6), builtin_dra("Fp"));
    const auto report = run_trials(product, bold_config(1000, 6));
    const auto& a = report.aggregates;
    EXPECT_LE(a.mean_resets, 2.0 + 3.0 * std::sqrt(a.var_resets / 1000.0));
    EXPECT_EQ(a.accepted, 1000u);
}

TEST(Harness, Fig1CautiousEndsInGoodState) {
    const auto product = build_product(gen_fig1(4), builtin_dra("Fp"));
    auto config = bold_config(300, 13);
    config.monitor = MonitorConfig::cautious();
    const auto report = run_trials(product, config);
    const auto good = product.find({5, 1});
    ASSERT_TRUE(good.has_value());
    for (const auto& t : report.trials) {
        ASSERT_EQ(t.outcome, TrialOutcome::AcceptedGood);
        EXPECT_EQ(t.final_candidate, std::vector<StateId>{*good});
    }
    EXPECT_DOUBLE_EQ(report.p_phi, 0.5);
    EXPECT_EQ(report.params.mxsc, 4u);
}

TEST(Harness, TrialSeedsAreDistinct) {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t t = 0; t < 10000; ++t) seeds.insert(trial_seed(42, t));
    EXPECT_EQ(seeds.size(), 10000u);
    EXPECT_NE(trial_seed(1, 0), trial_seed(2, 0));
}

}  // namespace
}  // namespace resetmon

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "resetmon/errors.hpp"
#include "resetmon/formats.hpp"
#include "text_util.hpp"

namespace resetmon {

namespace {

double parse_probability(const Token& tok) {
    const auto slash = tok.text.find('/');
    double value = 0.0;
    bool ok = false;
    if (slash == std::string_view::npos) {
        ok = parse_number(tok.text, value);
    } else {
        std::uint64_t num = 0, den = 0;
        ok = parse_number(tok.text.substr(0, slash), num) &&
             parse_number(tok.text.substr(slash + 1), den) && den != 0;
        if (ok) value = static_cast<double>(num) / static_cast<double>(den);
    }
    if (!ok) throw ParseError("E_PROB", tok.line, tok.column, "invalid probability '" + std::string(tok.text) + "'");
    if (!(value >= 0.0 && value <= 1.0))
        throw ParseError("E_PROB", tok.line, tok.column, "probability outside [0,1]");
    return value;
}

StateId parse_state_ref(const Token& tok, std::size_t n) {
    std::uint64_t id = 0;
    if (!parse_number(tok.text, id))
        throw ParseError("E_SYNTAX", tok.line, tok.column, "expected a state id, got '" + std::string(tok.text) + "'");
    if (id >= n)
        throw ParseError("E_UNKNOWN_STATE", tok.line, tok.column,
                         "state " + std::to_string(id) + " is not below " + std::to_string(n));
    return static_cast<StateId>(id);
}

}  // namespace

MarkovChain parse_chain(std::string_view text) {
    const auto lines = tokenize_lines(text, '#');
    auto it = lines.begin();
    if (it == lines.end()) throw ParseError("E_HEADER", 1, 1, "missing 'mc <nstates> <nap>' header");

    const auto& header = *it++;
    std::uint64_t n = 0, nap = 0;
    if (header.size() != 3 || header[0].text != "mc" || !parse_number(header[1].text, n) ||
        !parse_number(header[2].text, nap) || n == 0 || nap > kMaxPropositions)
        throw ParseError("E_HEADER", header[0].line, header[0].column,
                         "expected 'mc <nstates> <nap>' with nstates >= 1 and nap <= 16");

    std::vector<std::string> props;
    if (it != lines.end() && (*it)[0].text == "ap") {
        const auto& line = *it++;
        for (std::size_t k = 1; k < line.size(); ++k) {
            if (std::find(props.begin(), props.end(), line[k].text) != props.end())
                throw ParseError("E_SYNTAX", line[k].line, line[k].column, "duplicate proposition");
            props.emplace_back(line[k].text);
        }
    }
    if (props.size() != nap) {
        const std::size_t line = it != lines.end() ? (*it)[0].line : header[0].line;
        throw ParseError("E_HEADER", line, 1,
                         "expected " + std::to_string(nap) + " propositions on the 'ap' line");
    }

    std::vector<std::vector<Transition>> rows(n);
    std::vector<double> initial(n, 0.0);
    std::vector<Letter> labels(n, 0);
    std::vector<std::string> names(n);
    std::vector<std::size_t> declared_at(n, 0);
    std::set<std::pair<StateId, StateId>> edges;

    for (; it != lines.end(); ++it) {
        const auto& line = *it;
        if (line[0].text == "state") {
            if (line.size() < 3)
                throw ParseError("E_SYNTAX", line[0].line, line[0].column,
                                 "expected 'state <id> [bits] init=<p> [name=<n>]'");
            const StateId s = parse_state_ref(line[1], n);
            if (declared_at[s])
                throw ParseError("E_DUP_STATE", line[1].line, line[1].column,
                                 "state " + std::to_string(s) + " already declared on line " +
                                     std::to_string(declared_at[s]));
            declared_at[s] = line[0].line;
            std::size_t k = 2;
            if (k < line.size() && line[k].text.find('=') == std::string_view::npos) {
                const auto bits = line[k].text;
                if (bits.size() != nap || bits.find_first_not_of("01") != std::string_view::npos)
                    throw ParseError("E_SYNTAX", line[k].line, line[k].column,
                                     "label must have one 0/1 per proposition");
                for (std::size_t b = 0; b < nap; ++b)
                    if (bits[b] == '1') labels[s] |= Letter{1} << b;
                ++k;
            }
            bool have_init = false;
            for (; k < line.size(); ++k) {
                const auto& tok = line[k];
                if (tok.text.starts_with("init=") && !have_init) {
                    Token value{tok.text.substr(5), tok.line, tok.column + 5};
                    initial[s] = parse_probability(value);
                    have_init = true;
                } else if (tok.text.starts_with("name=") && tok.text.size() > 5 && names[s].empty()) {
                    names[s] = std::string(tok.text.substr(5));
                } else {
                    throw ParseError("E_SYNTAX", tok.line, tok.column,
                                     "unexpected '" + std::string(tok.text) + "'");
                }
            }
            if (!have_init)
                throw ParseError("E_SYNTAX", line[0].line, line[0].column, "missing init=<p>");
            continue;
        }
        if (line.size() != 3)
            throw ParseError("E_SYNTAX", line[0].line, line[0].column,
                             "expected '<src> <dst> <prob>' or a 'state' line");
        const StateId src = parse_state_ref(line[0], n);
        const StateId dst = parse_state_ref(line[1], n);
        const double p = parse_probability(line[2]);
        if (p == 0.0)
            throw ParseError("E_PROB", line[2].line, line[2].column, "transition probability must be positive");
        if (!edges.insert({src, dst}).second)
            throw ParseError("E_DUP_TRANSITION", line[0].line, line[0].column,
                             "transition " + std::to_string(src) + " -> " + std::to_string(dst) +
                                 " listed twice");
        rows[src].push_back({dst, p});
    }

    for (std::size_t s = 0; s < n; ++s) {
        if (!declared_at[s])
            throw ParseError("E_MISSING_STATE", 0, 0, "state " + std::to_string(s) + " never declared");
        if (names[s].empty()) names[s] = "s" + std::to_string(s);
    }
    double init_sum = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        double sum = 0.0;
        for (const auto& t : rows[s]) sum += t.probability;
        if (std::abs(sum - 1.0) > kProbabilityTolerance) {
            std::ostringstream msg;
            msg << "outgoing probabilities of state " << names[s] << " sum to " << sum;
            throw ParseError("E_ROWSUM", declared_at[s], 1, msg.str());
        }
        std::sort(rows[s].begin(), rows[s].end(),
                  [](const Transition& a, const Transition& b) { return a.target < b.target; });
        init_sum += initial[s];
    }
    if (std::abs(init_sum - 1.0) > kProbabilityTolerance) {
        std::ostringstream msg;
        msg << "initial distribution sums to " << init_sum;
        throw ParseError("E_INITSUM", 0, 0, msg.str());
    }
    return MarkovChain(std::move(props), std::move(rows), std::move(initial), std::move(labels),
                       std::move(names));
}

std::string serialize_chain(const MarkovChain& chain) {
    std::ostringstream out;
    const std::size_t nap = chain.propositions().size();
    out << "mc " << chain.num_states() << ' ' << nap << '\n';
    if (nap > 0) {
        out << "ap";
        for (const auto& p : chain.propositions()) out << ' ' << p;
        out << '\n';
    }
    for (StateId s = 0; s < chain.num_states(); ++s) {
        out << "state " << s;
        if (nap > 0) {
            out << ' ';
            for (std::size_t b = 0; b < nap; ++b) out << ((chain.label(s) >> b) & 1u ? '1' : '0');
        }
        out << " init=" << format_double(chain.initial(s));
        if (chain.name(s) != "s" + std::to_string(s)) out << " name=" << chain.name(s);
        out << '\n';
    }
    for (StateId s = 0; s < chain.num_states(); ++s)
        for (const auto& t : chain.successors(s))
            out << s << ' ' << t.target << ' ' << format_double(t.probability) << '\n';
    return out.str();
}

}  // namespace resetmon

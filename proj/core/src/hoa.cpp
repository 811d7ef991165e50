#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <sstream>

#include "resetmon/errors.hpp"
#include "resetmon/formats.hpp"
#include "text_util.hpp"

namespace resetmon {

namespace {

enum class Kind { Header, Ident, Int, String, Punct, Body, End, Eof };

struct Lexeme {
    Kind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Lexeme> lex(std::string_view text) {
    std::vector<Lexeme> out;
    std::size_t line = 1, column = 1, i = 0;
    auto advance = [&](std::size_t count) {
        for (std::size_t k = 0; k < count; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
            const auto close = text.find("*/", i + 2);
            if (close == std::string_view::npos)
                throw ParseError("E_HOA_SYNTAX", line, column, "unterminated comment");
            advance(close + 2 - i);
            continue;
        }
        Lexeme lx{Kind::Punct, "", line, column};
        if (c == '"') {
            std::size_t k = i + 1;
            std::string value;
            while (k < text.size() && text[k] != '"') {
                if (text[k] == '\\' && k + 1 < text.size()) ++k;
                value += text[k++];
            }
            if (k >= text.size()) throw ParseError("E_HOA_SYNTAX", line, column, "unterminated string");
            lx.kind = Kind::String;
            lx.text = std::move(value);
            advance(k + 1 - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t k = i;
            while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
            lx.kind = Kind::Int;
            lx.text = std::string(text.substr(i, k - i));
            advance(k - i);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '@') {
            std::size_t k = i;
            while (k < text.size() && (std::isalnum(static_cast<unsigned char>(text[k])) ||
                                       text[k] == '_' || text[k] == '-' || text[k] == '@'))
                ++k;
            std::string word(text.substr(i, k - i));
            if (word == "--BODY--") {
                lx.kind = Kind::Body;
            } else if (word == "--END--") {
                lx.kind = Kind::End;
            } else if (k < text.size() && text[k] == ':') {
                lx.kind = Kind::Header;
                ++k;
            } else {
                lx.kind = Kind::Ident;
            }
            lx.text = std::move(word);
            advance(k - i);
        } else if (std::string_view("[]{}()!&|,").find(c) != std::string_view::npos) {
            lx.text = std::string(1, c);
            advance(1);
        } else {
            throw ParseError("E_HOA_SYNTAX", line, column, std::string("unexpected character '") + c + "'");
        }
        out.push_back(std::move(lx));
    }
    out.push_back({Kind::Eof, "", line, column});
    return out;
}

/// Boolean label over AP indices, evaluated on a letter.
struct Label {
    enum class Op { True, False, Ap, Not, And, Or } op;
    std::size_t ap = 0;
    std::unique_ptr<Label> lhs, rhs;

    bool eval(Letter letter) const {
        switch (op) {
            case Op::True: return true;
            case Op::False: return false;
            case Op::Ap: return (letter >> ap) & 1u;
            case Op::Not: return !lhs->eval(letter);
            case Op::And: return lhs->eval(letter) && rhs->eval(letter);
            case Op::Or: return lhs->eval(letter) || rhs->eval(letter);
        }
        return false;
    }
};

std::unique_ptr<Label> make_label(Label::Op op) {
    auto node = std::make_unique<Label>();
    node->op = op;
    return node;
}

class Parser {
public:
    explicit Parser(std::string_view text) : lx_(lex(text)) {}

    RabinAutomaton parse();

private:
    const Lexeme& peek() const { return lx_[pos_]; }
    const Lexeme& take() { return lx_[pos_ < lx_.size() - 1 ? pos_++ : pos_]; }
    bool accept_punct(char c) {
        if (peek().kind == Kind::Punct && peek().text[0] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& code, const Lexeme& at, const std::string& msg) const {
        throw ParseError(code, at.line, at.column, msg);
    }
    void expect_punct(char c, const std::string& code) {
        if (!accept_punct(c)) fail(code, peek(), std::string("expected '") + c + "'");
    }
    std::size_t expect_int(const std::string& code, const std::string& what) {
        const Lexeme& l = take();
        std::size_t value = 0;
        if (l.kind != Kind::Int || !parse_number(std::string_view(l.text), value))
            fail(code, l, "expected " + what);
        return value;
    }

    void parse_acceptance();
    std::unique_ptr<Label> parse_or();
    std::unique_ptr<Label> parse_and();
    std::unique_ptr<Label> parse_not();

    std::vector<Lexeme> lx_;
    std::size_t pos_ = 0;
    std::size_t num_aps_ = 0;
    // (fin set, inf set) per pair
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    std::size_t num_sets_ = 0;
};

void Parser::parse_acceptance() {
    num_sets_ = expect_int("E_HOA_ACCEPTANCE", "number of acceptance sets");
    if (peek().kind == Kind::Ident && peek().text == "f") {
        take();
        return;
    }
    while (true) {
        // a pair may or may not be parenthesised
        const bool paren = accept_punct('(');
        std::optional<std::size_t> fin, inf;
        for (int k = 0; k < 2; ++k) {
            if (k == 1) expect_punct('&', "E_HOA_ACCEPTANCE");
            const Lexeme& word = take();
            if (word.kind != Kind::Ident || (word.text != "Fin" && word.text != "Inf"))
                fail("E_HOA_ACCEPTANCE", word, "only disjunctions of (Fin(x) & Inf(y)) are supported");
            expect_punct('(', "E_HOA_ACCEPTANCE");
            const std::size_t set = expect_int("E_HOA_ACCEPTANCE", "acceptance set number");
            expect_punct(')', "E_HOA_ACCEPTANCE");
            auto& slot = word.text == "Fin" ? fin : inf;
            if (slot) fail("E_HOA_ACCEPTANCE", word, "each pair needs one Fin and one Inf");
            if (set >= num_sets_) fail("E_HOA_ACCEPTANCE", word, "acceptance set out of range");
            slot = set;
        }
        if (paren) expect_punct(')', "E_HOA_ACCEPTANCE");
        pairs_.emplace_back(*fin, *inf);
        if (!accept_punct('|')) break;
    }
}

std::unique_ptr<Label> Parser::parse_or() {
    auto lhs = parse_and();
    while (accept_punct('|')) {
        auto node = make_label(Label::Op::Or);
        node->lhs = std::move(lhs);
        node->rhs = parse_and();
        lhs = std::move(node);
    }
    return lhs;
}

std::unique_ptr<Label> Parser::parse_and() {
    auto lhs = parse_not();
    while (accept_punct('&')) {
        auto node = make_label(Label::Op::And);
        node->lhs = std::move(lhs);
        node->rhs = parse_not();
        lhs = std::move(node);
    }
    return lhs;
}

std::unique_ptr<Label> Parser::parse_not() {
    if (accept_punct('!')) {
        auto node = make_label(Label::Op::Not);
        node->lhs = parse_not();
        return node;
    }
    if (accept_punct('(')) {
        auto inner = parse_or();
        expect_punct(')', "E_HOA_SYNTAX");
        return inner;
    }
    const Lexeme& l = take();
    if (l.kind == Kind::Ident && (l.text == "t" || l.text == "f"))
        return make_label(l.text == "t" ? Label::Op::True : Label::Op::False);
    if (l.kind == Kind::Int) {
        std::size_t ap = 0;
        parse_number(std::string_view(l.text), ap);
        if (ap >= num_aps_) fail("E_HOA_AP", l, "undeclared atomic proposition " + l.text);
        auto node = make_label(Label::Op::Ap);
        node->ap = ap;
        return node;
    }
    fail("E_HOA_SYNTAX", l, "malformed label expression");
}

RabinAutomaton Parser::parse() {
    const Lexeme& first = take();
    if (first.kind != Kind::Header || first.text != "HOA" || peek().kind != Kind::Ident ||
        peek().text != "v1")
        fail("E_HOA_HEADER", first, "expected 'HOA: v1'");
    take();

    std::optional<std::size_t> states;
    std::optional<std::size_t> start;
    std::vector<std::string> aps;
    bool have_aps = false, have_acceptance = false;
    while (peek().kind == Kind::Header) {
        const Lexeme key = take();
        if (key.text == "States") {
            if (states) fail("E_HOA_HEADER", key, "duplicate States");
            states = expect_int("E_HOA_HEADER", "state count");
        } else if (key.text == "Start") {
            if (start) fail("E_HOA_HEADER", key, "only a single initial state is supported");
            start = expect_int("E_HOA_HEADER", "initial state");
            if (peek().kind == Kind::Punct && peek().text == "&")
                fail("E_HOA_HEADER", peek(), "conjunctive initial states are not supported");
        } else if (key.text == "AP") {
            if (have_aps) fail("E_HOA_HEADER", key, "duplicate AP");
            have_aps = true;
            num_aps_ = expect_int("E_HOA_HEADER", "AP count");
            for (std::size_t k = 0; k < num_aps_; ++k) {
                const Lexeme& s = take();
                if (s.kind != Kind::String) fail("E_HOA_HEADER", s, "expected a quoted AP name");
                aps.push_back(s.text);
            }
        } else if (key.text == "Acceptance") {
            if (have_acceptance) fail("E_HOA_HEADER", key, "duplicate Acceptance");
            have_acceptance = true;
            parse_acceptance();
        } else {
            // name, acc-name, properties, tool, ...: values are ignored
            while (peek().kind != Kind::Header && peek().kind != Kind::Body && peek().kind != Kind::Eof)
                take();
        }
    }
    if (peek().kind != Kind::Body) {
        if (peek().kind == Kind::Eof) fail("E_HOA_BODY", peek(), "missing --BODY--");
        fail("E_HOA_SYNTAX", peek(), "unexpected '" + peek().text + "' in header");
    }
    if (!states || !start || !have_aps || !have_acceptance)
        fail("E_HOA_HEADER", peek(), "States, Start, AP and Acceptance are required");
    if (*states == 0) fail("E_HOA_HEADER", first, "automaton has no states");
    if (*start >= *states) fail("E_HOA_STATE", first, "initial state out of range");
    if (num_aps_ > kMaxPropositions) fail("E_HOA_AP", first, "too many atomic propositions");
    take();

    const std::size_t n = *states;
    const Letter letters = Letter{1} << num_aps_;
    constexpr StateId unset = ~StateId{0};
    std::vector<StateId> delta(n * letters, unset);
    std::vector<char> defined(n, 0);
    std::vector<std::vector<std::size_t>> sets_of(n);

    while (peek().kind == Kind::Header && peek().text == "State") {
        take();
        if (peek().kind == Kind::Punct && peek().text == "[")
            fail("E_HOA_BODY", peek(), "state labels are not supported");
        const Lexeme& id_lx = peek();
        const std::size_t q = expect_int("E_HOA_STATE", "state number");
        if (q >= n) fail("E_HOA_STATE", id_lx, "state " + id_lx.text + " out of range");
        if (defined[q]) fail("E_HOA_STATE", id_lx, "state " + id_lx.text + " defined twice");
        defined[q] = 1;
        if (peek().kind == Kind::String) take();
        if (accept_punct('{')) {
            while (!accept_punct('}')) {
                const Lexeme& s = peek();
                const std::size_t set = expect_int("E_HOA_ACCEPTANCE", "acceptance set number");
                if (set >= num_sets_) fail("E_HOA_ACCEPTANCE", s, "acceptance set out of range");
                sets_of[q].push_back(set);
                accept_punct(',');
            }
        }
        while (peek().kind == Kind::Punct && peek().text == "[") {
            const Lexeme edge = take();
            const auto label = parse_or();
            expect_punct(']', "E_HOA_SYNTAX");
            const Lexeme& dst_lx = peek();
            const std::size_t dst = expect_int("E_HOA_BODY", "edge target");
            if (dst >= n) fail("E_HOA_STATE", dst_lx, "edge target " + dst_lx.text + " out of range");
            if (peek().kind == Kind::Punct && peek().text == "&")
                fail("E_HOA_NONDET", peek(), "universal edges are not supported");
            if (peek().kind == Kind::Punct && peek().text == "{")
                fail("E_HOA_ACCEPTANCE", peek(), "transition-based acceptance is not supported");
            for (Letter a = 0; a < letters; ++a) {
                if (!label->eval(a)) continue;
                StateId& slot = delta[q * letters + a];
                if (slot != unset && slot != dst)
                    fail("E_HOA_NONDET", edge, "state " + std::to_string(q) + " has two successors on one letter");
                slot = static_cast<StateId>(dst);
            }
        }
        if (peek().kind == Kind::Int) fail("E_HOA_BODY", peek(), "implicit edge labels are not supported");
    }
    if (peek().kind != Kind::End) {
        if (peek().kind == Kind::Eof) fail("E_HOA_BODY", peek(), "missing --END--");
        fail("E_HOA_BODY", peek(), "unexpected '" + peek().text + "' in body");
    }
    const Lexeme& end = peek();
    for (std::size_t q = 0; q < n; ++q) {
        if (!defined[q]) fail("E_HOA_STATE", end, "state " + std::to_string(q) + " has no definition");
        for (Letter a = 0; a < letters; ++a)
            if (delta[q * letters + a] == unset)
                fail("E_HOA_INCOMPLETE", end, "state " + std::to_string(q) + " has no successor on some letter");
    }

    std::vector<RabinPair> pairs;
    for (const auto& [fin, inf] : pairs_) {
        RabinPair pair;
        for (std::size_t q = 0; q < n; ++q) {
            const auto& sets = sets_of[q];
            if (std::find(sets.begin(), sets.end(), fin) != sets.end()) pair.fin.push_back(static_cast<StateId>(q));
            if (std::find(sets.begin(), sets.end(), inf) != sets.end()) pair.inf.push_back(static_cast<StateId>(q));
        }
        pairs.push_back(std::move(pair));
    }
    try {
        return RabinAutomaton(std::move(aps), n, std::move(delta), static_cast<StateId>(*start),
                              std::move(pairs));
    } catch (const ConfigError& e) {
        throw ParseError("E_HOA_AP", first.line, first.column, e.what());
    }
}

std::string quoted(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + '"';
}

std::string minterm(Letter letter, std::size_t num_aps) {
    if (num_aps == 0) return "t";
    std::string out;
    for (std::size_t k = 0; k < num_aps; ++k) {
        if (k) out += '&';
        if (!((letter >> k) & 1u)) out += '!';
        out += std::to_string(k);
    }
    return out;
}

}  // namespace

RabinAutomaton parse_dra_hoa(std::string_view text) { return Parser(text).parse(); }

std::string to_hoa(const RabinAutomaton& dra, std::string_view name) {
    std::ostringstream out;
    const auto& pairs = dra.pairs();
    out << "HOA: v1\n";
    if (!name.empty()) out << "name: " << quoted(name) << '\n';
    out << "States: " << dra.num_states() << '\n';
    out << "Start: " << dra.initial() << '\n';
    out << "AP: " << dra.propositions().size();
    for (const auto& p : dra.propositions()) out << ' ' << quoted(p);
    out << '\n';
    out << "acc-name: Rabin " << pairs.size() << '\n';
    out << "Acceptance: " << 2 * pairs.size();
    if (pairs.empty()) out << " f";
    for (std::size_t k = 0; k < pairs.size(); ++k)
        out << (k ? " | " : " ") << "(Fin(" << 2 * k << ") & Inf(" << 2 * k + 1 << "))";
    out << '\n';
    out << "properties: trans-labels explicit-labels state-acc deterministic complete\n";
    out << "--BODY--\n";
    for (StateId q = 0; q < dra.num_states(); ++q) {
        out << "State: " << q;
        std::vector<std::size_t> sets;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            if (std::binary_search(pairs[k].fin.begin(), pairs[k].fin.end(), q)) sets.push_back(2 * k);
            if (std::binary_search(pairs[k].inf.begin(), pairs[k].inf.end(), q)) sets.push_back(2 * k + 1);
        }
        if (!sets.empty()) {
            out << " {";
            for (std::size_t k = 0; k < sets.size(); ++k) out << (k ? " " : "") << sets[k];
            out << '}';
        }
        out << '\n';
        for (Letter a = 0; a < dra.num_letters(); ++a)
            out << '[' << minterm(a, dra.propositions().size()) << "] " << dra.next(q, a) << '\n';
    }
    out << "--END--\n";
    return out.str();
}

}  // namespace resetmon

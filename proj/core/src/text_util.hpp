#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace resetmon {

struct Token {
    std::string_view text;
    std::size_t line;
    std::size_t column;
};

/// Whitespace-separated tokens per line, 1-based positions. Text from
/// `comment` to the end of a line is dropped, as are blank lines.
inline std::vector<std::vector<Token>> tokenize_lines(std::string_view text, char comment) {
    std::vector<std::vector<Token>> lines;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(pos, end - pos);
        if (const auto c = line.find(comment); c != std::string_view::npos) line = line.substr(0, c);
        std::vector<Token> tokens;
        std::size_t k = 0;
        while (k < line.size()) {
            if (line[k] == ' ' || line[k] == '\t' || line[k] == '\r') {
                ++k;
                continue;
            }
            const std::size_t start = k;
            while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') ++k;
            tokens.push_back({line.substr(start, k - start), line_no, start + 1});
        }
        if (!tokens.empty()) lines.push_back(std::move(tokens));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

/// Shortest text that reads back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace resetmon

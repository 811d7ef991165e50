#include "model_loader.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "resetmon/errors.hpp"
#include "resetmon/formats.hpp"
#include "resetmon/models.hpp"

namespace resetmon::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, sep)) parts.push_back(part);
    return parts;
}

std::uint64_t to_uint(const std::string& s, const std::string& spec) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("bad number '" + s + "' in '" + spec + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

}  // namespace

MarkovChain load_model(const std::string& spec) {
    if (!spec.starts_with("builtin:")) return parse_chain(read_file(spec));
    const auto parts = split(spec, ':');
    if (parts.size() == 3 && parts[1] == "fig1") return gen_fig1(to_uint(parts[2], spec));
    if (parts.size() == 3 && parts[1] == "fig2") return gen_fig2(to_uint(parts[2], spec));
    if (parts.size() == 4 && parts[1] == "random")
        return gen_random(to_uint(parts[2], spec), to_uint(parts[3], spec));
    throw ConfigError("unknown model '" + spec +
                      "' (expected builtin:fig1:<n>, builtin:fig2:<n>, builtin:random:<n>:<seed>)");
}

RabinAutomaton load_property(const std::string& spec) {
    if (spec.starts_with("prop:")) return builtin_dra(spec.substr(5));
    return parse_dra_hoa(read_file(spec));
}

}  // namespace resetmon::cli

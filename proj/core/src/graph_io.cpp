#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "netepi/errors.hpp"
#include "netepi/graph.hpp"

namespace netepi {

namespace {

std::string_view strip(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = line.find_last_not_of(" \t\r");
    return line.substr(first, last - first + 1);
}

// Parses whitespace-separated unsigned integers; nullopt on any junk.
std::optional<std::vector<std::uint64_t>> parse_numbers(std::string_view text) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
            ++pos;
        if (pos == text.size())
            break;
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc{})
            return std::nullopt;
        const auto consumed = static_cast<std::size_t>(ptr - text.data());
        if (consumed < text.size() && text[consumed] != ' ' && text[consumed] != '\t')
            return std::nullopt;
        out.push_back(value);
        pos = consumed;
    }
    return out;
}

}  // namespace

void save_edge_list(const Graph& g, std::ostream& out) {
    out << g.node_count() << '\n';
    for (const Edge& e : g.edges())
        out << e.u << ' ' << e.v << '\n';
}

Graph load_edge_list(std::istream& in) {
    std::string raw;
    std::size_t line_no = 0;
    std::optional<Graph> g;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = strip(raw);
        if (line.empty())
            continue;
        const auto numbers = parse_numbers(line);
        if (!numbers)
            throw parse_error(line_no, "expected non-negative integers, got '" + std::string(line) + "'");
        if (!g) {
            if (numbers->size() != 1 || (*numbers)[0] == 0)
                throw parse_error(line_no, "header must be a single positive node count");
            g.emplace((*numbers)[0]);
            continue;
        }
        if (numbers->size() != 2)
            throw parse_error(line_no, "expected 'u v'");
        const auto u = (*numbers)[0], v = (*numbers)[1];
        const auto n = g->node_count();
        if (u >= n || v >= n)
            throw parse_error(line_no, "endpoint out of range (n=" + std::to_string(n) + ")");
        if (u == v)
            throw parse_error(line_no, "self-loop at node " + std::to_string(u));
        if (!g->add_edge(static_cast<node_t>(u), static_cast<node_t>(v)))
            throw parse_error(line_no, "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    if (!g)
        throw parse_error(line_no, "missing node-count header");
    return std::move(*g);
}

}  // namespace netepi

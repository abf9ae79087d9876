#include "pottszero/graph_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "pottszero/errors.hpp"

namespace pottszero {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

int to_int(std::string_view token, int line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
    return value;
}

}  // namespace

PartiallyColoredGraph parse_edge_list(std::string_view text) {
    std::optional<PartiallyColoredGraph> g;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tokens = split_tokens(line);
        if (tokens.empty()) continue;

        try {
            if (!g) {
                if (tokens.size() != 2) throw ParseError(line_no, "header must be 'n q'");
                int n = to_int(tokens[0], line_no);
                int q = to_int(tokens[1], line_no);
                if (n < 0 || q < 1) throw ParseError(line_no, "need n >= 0 and q >= 1");
                g.emplace(n, q);
            } else if (tokens[0] == "pin") {
                if (tokens.size() != 3) throw ParseError(line_no, "pin line must be 'pin u c'");
                g->set_pin(to_int(tokens[1], line_no), to_int(tokens[2], line_no));
            } else {
                if (tokens.size() != 2) throw ParseError(line_no, "edge line must be 'u v'");
                g->add_edge(to_int(tokens[0], line_no), to_int(tokens[1], line_no));
            }
        } catch (const DomainError& e) {
            throw ParseError(line_no, e.what());
        }
        if (end == text.size()) break;
    }
    if (!g) throw ParseError(line_no, "missing 'n q' header");
    return *g;
}

PartiallyColoredGraph read_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_edge_list(buffer.str());
}

std::string format_edge_list(const PartiallyColoredGraph& g) {
    std::ostringstream os;
    os << g.num_vertices() << ' ' << g.num_colors() << '\n';
    for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
    for (const Pin& p : g.pins()) os << "pin " << p.vertex << ' ' << p.color << '\n';
    return os.str();
}

void write_text_atomically(const std::filesystem::path& path, std::string_view text) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << text;
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace pottszero

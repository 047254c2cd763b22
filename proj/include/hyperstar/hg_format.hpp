#ifndef HYPERSTAR_HG_FORMAT_HPP
#define HYPERSTAR_HG_FORMAT_HPP

// Plain-text hypergraph format:
//
//   # optional comment lines
//   n k m
//   v_1 ... v_k      (m lines, 0-based vertex ids)

#include <hyperstar/hypergraph.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace hyperstar {

namespace detail {

inline std::vector<std::uint64_t> parse_uints(std::string_view line, std::size_t line_no) {
    std::vector<std::uint64_t> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i == line.size()) break;
        std::uint64_t value{};
        auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
        if (ec != std::errc{} || (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t' && *ptr != '\r'))
            throw invalid_input("line " + std::to_string(line_no) + ": expected non-negative integers, got '" +
                                std::string(line) + "'");
        out.push_back(value);
        i = static_cast<std::size_t>(ptr - line.data());
    }
    return out;
}

inline bool is_skippable(std::string_view line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string_view::npos || line[pos] == '#';
}

} // namespace detail

inline Hypergraph parse_hg(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t line_no = 0;
    for (std::size_t start = 0; start < text.size();) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        auto line = text.substr(start, end - start);
        if (!detail::is_skippable(line)) lines.emplace_back(line_no, line);
        start = end + 1;
    }
    if (lines.empty()) throw invalid_input("missing 'n k m' header");
    auto header = detail::parse_uints(lines[0].second, lines[0].first);
    if (header.size() != 3)
        throw invalid_input("line " + std::to_string(lines[0].first) + ": malformed header, expected 'n k m'");
    const auto n = header[0], k = header[1], m = header[2];
    if (lines.size() - 1 != m)
        throw invalid_input("header declares " + std::to_string(m) + " edges but " +
                            std::to_string(lines.size() - 1) + " edge lines follow");

    std::vector<std::vector<vertex_t>> edges;
    edges.reserve(m);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto values = detail::parse_uints(lines[i].second, lines[i].first);
        if (values.size() != k)
            throw invalid_input("line " + std::to_string(lines[i].first) + ": arity mismatch, expected " +
                                std::to_string(k) + " vertices, got " + std::to_string(values.size()));
        std::vector<vertex_t> edge;
        edge.reserve(k);
        for (auto v : values) {
            if (v >= n)
                throw invalid_input("line " + std::to_string(lines[i].first) + ": vertex " + std::to_string(v) +
                                    " out of range [0, " + std::to_string(n) + ")");
            edge.push_back(static_cast<vertex_t>(v));
        }
        edges.push_back(std::move(edge));
    }
    return Hypergraph::create(n, k, edges);
}

inline std::string serialize_hg(const Hypergraph& h) {
    std::string out = std::to_string(h.n()) + ' ' + std::to_string(h.k()) + ' ' + std::to_string(h.m()) + '\n';
    auto flat = h.edges_flat();
    for (std::size_t i = 0; i < flat.size(); ++i) {
        out += std::to_string(flat[i]);
        out += ((i + 1) % h.k() == 0) ? '\n' : ' ';
    }
    return out;
}

inline Hypergraph read_hg_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_hg(buffer.str());
}

inline void write_hg_file(const Hypergraph& h, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out << serialize_hg(h);
}

} // namespace hyperstar

#endif // HYPERSTAR_HG_FORMAT_HPP

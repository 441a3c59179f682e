#pragma once

// Graph I/O: plain edge lists and the graph6 string format.
//
// Edge list: first non-comment line "n m", then m lines "u v" with
// 0-based endpoints. '#' starts a comment, blank lines are skipped.
//
// graph6: one printable-ASCII string per graph. Header is one byte
// 63+n for n <= 62, or 126 followed by three bytes carrying an 18-bit
// n for larger graphs. Payload packs the upper triangle column by
// column, six bits per byte, each byte offset by 63.

#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "distspec/errors.hpp"
#include "distspec/graph.hpp"

namespace distspec {

namespace detail {

inline bool blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (c != ' ' && c != '\t' && c != '\r') return false;
    }
    return true; // all whitespace
}

inline bool parse_ints(const std::string& line, std::vector<long long>& out, int want) {
    std::istringstream in(line);
    out.clear();
    long long v;
    while (in >> v) out.push_back(v);
    if (static_cast<int>(out.size()) != want) return false;
    std::string rest;
    return !(in.clear(), in >> rest); // reject trailing non-numeric tokens
}

} // namespace detail

inline Graph parse_edgelist(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    long long n = -1, m = -1;
    std::vector<long long> nums;

    while (std::getline(in, line)) {
        ++lineno;
        if (detail::blank_or_comment(line)) continue;
        if (!detail::parse_ints(line, nums, 2))
            throw input_error("edgelist: line " + std::to_string(lineno) +
                              ": expected \"n m\" header, got \"" + line + "\"");
        n = nums[0];
        m = nums[1];
        break;
    }
    if (n < 0)
        throw input_error("edgelist: missing \"n m\" header");
    if (n < 1)
        throw input_error("edgelist: vertex count must be at least 1, got " + std::to_string(n));
    if (m < 0 || m > n * (n - 1) / 2)
        throw input_error("edgelist: edge count " + std::to_string(m) +
                          " out of range for n=" + std::to_string(n));

    std::vector<Edge> edges;
    std::set<Edge> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::blank_or_comment(line)) continue;
        if (static_cast<long long>(edges.size()) == m)
            throw input_error("edgelist: line " + std::to_string(lineno) +
                              ": more than the declared " + std::to_string(m) + " edges");
        if (!detail::parse_ints(line, nums, 2))
            throw input_error("edgelist: line " + std::to_string(lineno) +
                              ": expected \"u v\", got \"" + line + "\"");
        long long u = nums[0], v = nums[1];
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw input_error("edgelist: line " + std::to_string(lineno) + ": endpoint out of range: " +
                              std::to_string(u) + " " + std::to_string(v));
        if (u == v)
            throw input_error("edgelist: line " + std::to_string(lineno) + ": self-loop at vertex " +
                              std::to_string(u));
        Edge e{static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v))};
        if (!seen.insert(e).second)
            throw input_error("edgelist: line " + std::to_string(lineno) + ": duplicate edge (" +
                              std::to_string(e.first) + "," + std::to_string(e.second) + ")");
        edges.push_back(e);
    }
    if (static_cast<long long>(edges.size()) != m)
        throw input_error("edgelist: declared " + std::to_string(m) + " edges but found " +
                          std::to_string(edges.size()));
    return Graph(static_cast<int>(n), std::move(edges));
}

inline std::string to_edgelist(const Graph& g) {
    std::ostringstream out;
    out << g.n << ' ' << g.m() << '\n';
    for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
    return out.str();
}

inline Graph parse_graph6(const std::string& text) {
    std::size_t b = text.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        throw input_error("graph6: empty input");
    std::size_t e = text.find_last_not_of(" \t\r\n");
    std::string s = text.substr(b, e - b + 1);
    const std::string prefix = ">>graph6<<";
    if (s.rfind(prefix, 0) == 0) s = s.substr(prefix.size());

    for (std::size_t i = 0; i < s.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 63 || c > 126)
            throw input_error("graph6: invalid byte " + std::to_string(c) + " at position " +
                              std::to_string(i));
    }
    if (s.empty())
        throw input_error("graph6: empty input");

    long long n;
    std::size_t pos;
    if (static_cast<unsigned char>(s[0]) == 126) {
        if (s.size() >= 2 && static_cast<unsigned char>(s[1]) == 126)
            throw input_error("graph6: vertex counts above 258047 are not supported");
        if (s.size() < 4)
            throw input_error("graph6: truncated header");
        n = (static_cast<long long>(s[1] - 63) << 12) | (static_cast<long long>(s[2] - 63) << 6) |
            static_cast<long long>(s[3] - 63);
        pos = 4;
    } else {
        n = s[0] - 63;
        pos = 1;
    }
    if (n < 1)
        throw input_error("graph6: vertex count must be at least 1, got " + std::to_string(n));

    long long k = n * (n - 1) / 2;
    long long need = (k + 5) / 6;
    long long have = static_cast<long long>(s.size() - pos);
    if (have < need)
        throw input_error("graph6: truncated bit stream: need " + std::to_string(need) +
                          " payload bytes, have " + std::to_string(have));
    if (have > need)
        throw input_error("graph6: " + std::to_string(have - need) + " trailing bytes");

    std::vector<Edge> edges;
    long long t = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++t) {
            int byte = s[pos + static_cast<std::size_t>(t / 6)] - 63;
            if ((byte >> (5 - t % 6)) & 1) edges.emplace_back(i, j);
        }
    }
    return Graph(static_cast<int>(n), std::move(edges));
}

inline std::string to_graph6(const Graph& g) {
    std::string out;
    if (g.n <= 62) {
        out.push_back(static_cast<char>(63 + g.n));
    } else if (g.n <= 258047) {
        out.push_back(126);
        out.push_back(static_cast<char>(63 + ((g.n >> 12) & 63)));
        out.push_back(static_cast<char>(63 + ((g.n >> 6) & 63)));
        out.push_back(static_cast<char>(63 + (g.n & 63)));
    } else {
        throw input_error("graph6: vertex counts above 258047 are not supported");
    }
    long long k = static_cast<long long>(g.n) * (g.n - 1) / 2;
    std::vector<char> bits(static_cast<std::size_t>(k), 0);
    for (auto [u, v] : g.edges)
        bits[static_cast<std::size_t>(v) * (v - 1) / 2 + static_cast<std::size_t>(u)] = 1;
    for (long long t = 0; t < k; t += 6) {
        int byte = 0;
        for (int r = 0; r < 6 && t + r < k; ++r)
            byte |= bits[static_cast<std::size_t>(t + r)] << (5 - r);
        out.push_back(static_cast<char>(63 + byte));
    }
    return out;
}

} // namespace distspec

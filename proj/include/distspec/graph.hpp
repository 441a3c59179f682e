#pragma once

// Simple undirected graphs on vertices 0..n-1, plus the standard
// families and a connected G(n,p) sampler.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "distspec/errors.hpp"

namespace distspec {

using Edge = std::pair<int, int>;

struct Graph {
    int n = 0;
    std::vector<Edge> edges; // normalized u < v, sorted, unique

    Graph() = default;

    Graph(int n_, std::vector<Edge> edges_) : n(n_), edges(std::move(edges_)) {
        if (n < 1)
            throw input_error("graph: vertex count must be at least 1, got " + std::to_string(n));
        for (auto& [u, v] : edges) {
            if (u == v)
                throw input_error("graph: self-loop at vertex " + std::to_string(u));
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw input_error("graph: edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") out of range for n=" + std::to_string(n));
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        auto dup = std::adjacent_find(edges.begin(), edges.end());
        if (dup != edges.end())
            throw input_error("graph: duplicate edge (" + std::to_string(dup->first) + "," +
                              std::to_string(dup->second) + ")");
    }

    std::int64_t m() const { return static_cast<std::int64_t>(edges.size()); }

    bool operator==(const Graph&) const = default;
};

inline std::vector<std::vector<int>> adjacency_lists(const Graph& g) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n));
    for (auto [u, v] : g.edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    return adj;
}

inline std::vector<int> degrees(const Graph& g) {
    std::vector<int> deg(static_cast<std::size_t>(g.n), 0);
    for (auto [u, v] : g.edges) {
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
    }
    return deg;
}

inline int component_count(const Graph& g) {
    auto adj = adjacency_lists(g);
    std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
    std::vector<int> stack;
    int components = 0;
    for (int s = 0; s < g.n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        ++components;
        seen[static_cast<std::size_t>(s)] = 1;
        stack.assign(1, s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(u)]) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    return components;
}

inline bool is_connected(const Graph& g) { return component_count(g) == 1; }

// Complete as a plain graph predicate: every pair adjacent (K_1 vacuously so).
inline bool is_complete(const Graph& g) {
    return g.m() == static_cast<std::int64_t>(g.n) * (g.n - 1) / 2;
}

enum class Family { path, cycle, star, complete, complete_bipartite };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::path: return "path";
        case Family::cycle: return "cycle";
        case Family::star: return "star";
        case Family::complete: return "complete";
        case Family::complete_bipartite: return "complete_bipartite";
    }
    return "?";
}

// a is the vertex count (first part size for complete_bipartite, with b the second).
inline Graph generate_family(Family f, int a, int b = 0) {
    std::vector<Edge> edges;
    switch (f) {
        case Family::path:
            if (a < 1) throw input_error("path: need at least 1 vertex");
            for (int i = 0; i + 1 < a; ++i) edges.emplace_back(i, i + 1);
            return Graph(a, std::move(edges));
        case Family::cycle:
            if (a < 3) throw input_error("cycle: need at least 3 vertices");
            for (int i = 0; i + 1 < a; ++i) edges.emplace_back(i, i + 1);
            edges.emplace_back(0, a - 1);
            return Graph(a, std::move(edges));
        case Family::star:
            if (a < 2) throw input_error("star: need at least 2 vertices");
            for (int i = 1; i < a; ++i) edges.emplace_back(0, i);
            return Graph(a, std::move(edges));
        case Family::complete:
            if (a < 1) throw input_error("complete: need at least 1 vertex");
            for (int i = 0; i < a; ++i)
                for (int j = i + 1; j < a; ++j) edges.emplace_back(i, j);
            return Graph(a, std::move(edges));
        case Family::complete_bipartite:
            if (a < 1 || b < 1) throw input_error("complete_bipartite: both parts need at least 1 vertex");
            for (int i = 0; i < a; ++i)
                for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
            return Graph(a + b, std::move(edges));
    }
    throw input_error("generate_family: unknown family");
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stable stream split: child seed for (seed, index) pairs.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    splitmix64(s);
    return splitmix64(s);
}

// Uniform double in [0,1) from the top 53 bits; identical across platforms,
// unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace detail

// Rejection-sample G(n,p) until connected. Deterministic for a fixed
// (n, p, seed) triple regardless of platform.
inline Graph random_connected_gnp(int n, double p, std::uint64_t seed, int max_attempts = 10000) {
    if (n < 1 || n > 100000)
        throw input_error("gnp: vertex count out of range: " + std::to_string(n));
    if (!(p > 0.0) || p > 1.0)
        throw input_error("gnp: edge probability must lie in (0,1]");
    if (max_attempts < 1)
        throw input_error("gnp: attempt cap must be positive");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<Edge> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (detail::uniform01(rng) < p) edges.emplace_back(i, j);
        Graph g(n, std::move(edges));
        if (is_connected(g)) return g;
    }
    throw input_error("gnp: no connected sample within " + std::to_string(max_attempts) +
                      " attempts (n=" + std::to_string(n) + ", p=" + std::to_string(p) + ")");
}

} // namespace distspec

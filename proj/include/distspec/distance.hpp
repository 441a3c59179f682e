#pragma once

// Distance matrix of a connected graph via per-vertex BFS, the degree
// sequences built on it, and the iterated distance-degree powers.
//
//   D_i = sum_j d(i,j)          (transmission of vertex i)
//   T_i = sum_j d(i,j) D_j      (second transmission)
//   W   = (1/2) sum_i D_i       (Wiener index)
//
//   M^(1)_i = D_i^alpha,  M^(t) = D M^(t-1),  S_t = sum_i (M^(t)_i)^2

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "distspec/errors.hpp"
#include "distspec/graph.hpp"

namespace distspec {

struct DistanceProfile {
    int n = 0;
    std::vector<int> dist; // row-major n*n
    int diameter = 0;
    std::vector<std::int64_t> dist_degrees;   // D_i
    std::vector<std::int64_t> second_degrees; // T_i
    std::int64_t wiener = 0;

    int d(int i, int j) const { return dist[static_cast<std::size_t>(i) * n + j]; }
};

// Dense n*n distances get large fast; BFS itself is cheap.
inline constexpr int max_profile_vertices = 4096;

inline DistanceProfile distance_profile(const Graph& g) {
    if (g.n > max_profile_vertices)
        throw input_error("distance_profile: graph too large (" + std::to_string(g.n) + " > " +
                          std::to_string(max_profile_vertices) + " vertices)");
    int components = component_count(g);
    if (components != 1)
        throw input_error("distance_profile: graph is disconnected (" + std::to_string(components) +
                          " components)");

    DistanceProfile p;
    p.n = g.n;
    const std::size_t n = static_cast<std::size_t>(g.n);
    p.dist.assign(n * n, -1);
    auto adj = adjacency_lists(g);

    std::vector<int> queue(n);
    for (int s = 0; s < g.n; ++s) {
        int* row = p.dist.data() + static_cast<std::size_t>(s) * n;
        row[s] = 0;
        std::size_t head = 0, tail = 0;
        queue[tail++] = s;
        while (head < tail) {
            int u = queue[head++];
            for (int w : adj[static_cast<std::size_t>(u)]) {
                if (row[w] < 0) {
                    row[w] = row[u] + 1;
                    queue[tail++] = w;
                }
            }
        }
    }

    p.dist_degrees.assign(n, 0);
    for (int i = 0; i < g.n; ++i) {
        std::int64_t di = 0;
        for (int j = 0; j < g.n; ++j) {
            int d = p.d(i, j);
            if (d > p.diameter) p.diameter = d;
            di += d;
        }
        p.dist_degrees[static_cast<std::size_t>(i)] = di;
        p.wiener += di;
    }
    p.wiener /= 2;

    p.second_degrees.assign(n, 0);
    for (int i = 0; i < g.n; ++i) {
        std::int64_t ti = 0;
        for (int j = 0; j < g.n; ++j)
            ti += static_cast<std::int64_t>(p.d(i, j)) * p.dist_degrees[static_cast<std::size_t>(j)];
        p.second_degrees[static_cast<std::size_t>(i)] = ti;
    }
    return p;
}

struct PowerSequence {
    double alpha = 1.0;
    int depth = 0;                               // number of M^(t) levels computed
    std::vector<std::vector<double>> m_vectors;  // m_vectors[t-1] = M^(t)
    std::vector<double> s_values;                // s_values[t-1] = S_t
    bool overflowed = false;                     // some S_t left finite range

    const std::vector<double>& m(int t) const { return m_vectors[static_cast<std::size_t>(t - 1)]; }
    double s(int t) const { return s_values[static_cast<std::size_t>(t - 1)]; }
};

inline constexpr int max_power_depth = 50;

inline PowerSequence power_sequence(const DistanceProfile& p, double alpha, int t_max) {
    if (p.n < 2)
        throw input_error("power_sequence: needs at least 2 vertices (D_i = 0 on a single vertex)");
    if (t_max < 2 || t_max > max_power_depth)
        throw input_error("power_sequence: depth must lie in [2," + std::to_string(max_power_depth) +
                          "], got " + std::to_string(t_max));
    if (!std::isfinite(alpha))
        throw input_error("power_sequence: alpha must be finite");

    PowerSequence seq;
    seq.alpha = alpha;
    seq.depth = t_max;
    const std::size_t n = static_cast<std::size_t>(p.n);

    std::vector<double> cur(n);
    for (std::size_t i = 0; i < n; ++i)
        cur[i] = std::pow(static_cast<double>(p.dist_degrees[i]), alpha);

    for (int t = 1; t <= t_max; ++t) {
        if (t > 1) {
            std::vector<double> next(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                const int* row = p.dist.data() + i * n;
                for (std::size_t j = 0; j < n; ++j) acc += row[j] * cur[j];
                next[i] = acc;
            }
            cur = std::move(next);
        }
        double s = 0.0;
        for (double x : cur) s += x * x;
        if (!std::isfinite(s)) seq.overflowed = true;
        seq.m_vectors.push_back(cur);
        seq.s_values.push_back(s);
    }
    return seq;
}

} // namespace distspec

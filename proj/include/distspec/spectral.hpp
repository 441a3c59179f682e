#pragma once

// Spectra of distance matrices.
//
// Eigenvalues come from a cyclic Jacobi iteration: sweep all (p,q)
// pairs, annihilate a_pq with the rotation that keeps |t| <= 1, and
// stop once the off-diagonal Frobenius mass is negligible against the
// matrix norm. Rotations are accumulated so every returned eigenpair
// can be checked against its residual.
//
// The Estrada index sum_i exp(mu_i) is computed two ways: directly
// from the spectrum, and through the trace series
//
//   sum_{k>=0} tr(D^k) / k!
//
// evaluated on the scaled matrix Q = D/u with u the largest row sum,
// so every power of Q stays entrywise in [0,1] and the scale factor
// u^k/k! can be carried separately. Since tr(Q^k) <= n, the tail past
// term k is below n * sum_{j>k} u^j/j!, which for k >= 2u is within a
// factor of two of n * u^k/k!; that drives the stopping rule.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "distspec/distance.hpp"
#include "distspec/errors.hpp"

namespace distspec {

struct DistanceSpectrum {
    std::vector<double> eigenvalues; // descending
    int n_plus = 0;                  // eigenvalues above the positivity cutoff
    double residual = 0.0;           // max_i || D v_i - mu_i v_i ||_inf
};

inline constexpr double positivity_eps = 1e-9;
inline constexpr int max_jacobi_sweeps = 100;

namespace detail {

struct Eigensystem {
    std::vector<double> values;  // unsorted, values[j] pairs with column j
    std::vector<double> vectors; // row-major n*n, column j = eigenvector j
};

inline Eigensystem jacobi_eigensystem(std::vector<double> a, int n, int max_sweeps) {
    const std::size_t N = static_cast<std::size_t>(n);
    Eigensystem es;
    es.vectors.assign(N * N, 0.0);
    for (std::size_t i = 0; i < N; ++i) es.vectors[i * N + i] = 1.0;

    double frob2 = 0.0;
    for (double x : a) frob2 += x * x;
    const double stop = 1e-26 * frob2; // off-diagonal mass target, ~(1e-13 * ||A||_F)^2

    auto off2 = [&] {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += a[static_cast<std::size_t>(p) * N + q] *
                                                 a[static_cast<std::size_t>(p) * N + q];
        return 2.0 * s;
    };

    bool converged = frob2 == 0.0 || off2() <= stop;
    for (int sweep = 0; !converged && sweep < max_sweeps; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a[static_cast<std::size_t>(p) * N + q];
                if (apq == 0.0) continue;
                double app = a[static_cast<std::size_t>(p) * N + p];
                double aqq = a[static_cast<std::size_t>(q) * N + q];
                double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                a[static_cast<std::size_t>(p) * N + p] = app - t * apq;
                a[static_cast<std::size_t>(q) * N + q] = aqq + t * apq;
                a[static_cast<std::size_t>(p) * N + q] = 0.0;
                a[static_cast<std::size_t>(q) * N + p] = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        double arp = a[static_cast<std::size_t>(r) * N + p];
                        double arq = a[static_cast<std::size_t>(r) * N + q];
                        a[static_cast<std::size_t>(r) * N + p] = c * arp - s * arq;
                        a[static_cast<std::size_t>(p) * N + r] = c * arp - s * arq;
                        a[static_cast<std::size_t>(r) * N + q] = s * arp + c * arq;
                        a[static_cast<std::size_t>(q) * N + r] = s * arp + c * arq;
                    }
                    double vrp = es.vectors[static_cast<std::size_t>(r) * N + p];
                    double vrq = es.vectors[static_cast<std::size_t>(r) * N + q];
                    es.vectors[static_cast<std::size_t>(r) * N + p] = c * vrp - s * vrq;
                    es.vectors[static_cast<std::size_t>(r) * N + q] = s * vrp + c * vrq;
                }
            }
        }
        converged = off2() <= stop;
    }
    if (!converged)
        throw numerical_error("jacobi: no convergence within " + std::to_string(max_sweeps) +
                              " sweeps (n=" + std::to_string(n) + ")");

    es.values.resize(N);
    for (std::size_t j = 0; j < N; ++j) es.values[j] = a[j * N + j];
    return es;
}

} // namespace detail

inline DistanceSpectrum d_eigenvalues(const DistanceProfile& p, int max_sweeps = max_jacobi_sweeps) {
    const int n = p.n;
    const std::size_t N = static_cast<std::size_t>(n);
    std::vector<double> a(N * N);
    for (std::size_t i = 0; i < N * N; ++i) a[i] = static_cast<double>(p.dist[i]);

    auto es = detail::jacobi_eigensystem(a, n, max_sweeps);

    DistanceSpectrum spec;
    spec.residual = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        double worst = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double acc = 0.0;
            const int* row = p.dist.data() + i * N;
            for (std::size_t k = 0; k < N; ++k) acc += row[k] * es.vectors[k * N + j];
            double r = std::abs(acc - es.values[j] * es.vectors[i * N + j]);
            if (r > worst) worst = r;
        }
        if (worst > spec.residual) spec.residual = worst;
    }
    double residual_cap = 1e-9 * static_cast<double>(n) * static_cast<double>(p.diameter);
    if (n > 1 && spec.residual > residual_cap)
        throw numerical_error("jacobi: residual " + std::to_string(spec.residual) +
                              " exceeds tolerance " + std::to_string(residual_cap));

    spec.eigenvalues = es.values;
    std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(), std::greater<double>());
    for (double mu : spec.eigenvalues)
        if (mu > positivity_eps) ++spec.n_plus;
    return spec;
}

inline int count_positive(const DistanceSpectrum& spec, double eps = positivity_eps) {
    if (!(eps >= 0.0))
        throw input_error("count_positive: cutoff must be non-negative");
    int k = 0;
    for (double mu : spec.eigenvalues)
        if (mu > eps) ++k;
    return k;
}

inline double distance_estrada(const DistanceSpectrum& spec) {
    double sum = 0.0;
    for (double mu : spec.eigenvalues) {
        if (mu > 709.0)
            throw numerical_error("estrada: exp(" + std::to_string(mu) + ") overflows");
        sum += std::exp(mu);
    }
    return sum;
}

inline double distance_energy(const DistanceSpectrum& spec) {
    double sum = 0.0;
    for (double mu : spec.eigenvalues) sum += std::abs(mu);
    return sum;
}

inline constexpr int max_series_terms = 500;

inline double distance_estrada_series(const DistanceProfile& p, double rel_tol = 1e-12,
                                      int term_cap = max_series_terms) {
    if (!(rel_tol > 0.0))
        throw input_error("estrada series: tolerance must be positive");
    if (term_cap < 1)
        throw input_error("estrada series: term cap must be positive");

    const int n = p.n;
    const std::size_t N = static_cast<std::size_t>(n);

    double u = 0.0; // max row sum bounds the spectral radius
    for (std::int64_t di : p.dist_degrees) u = std::max(u, static_cast<double>(di));
    if (u == 0.0) return static_cast<double>(n); // edgeless single vertex: tr(D^0) only
    if (u > 700.0)
        throw numerical_error("estrada series: row-sum scale " + std::to_string(u) +
                              " would overflow exp");

    std::vector<double> q(N * N), power(N * N, 0.0), next(N * N);
    for (std::size_t i = 0; i < N * N; ++i) q[i] = static_cast<double>(p.dist[i]) / u;
    for (std::size_t i = 0; i < N; ++i) power[i * N + i] = 1.0; // Q^0

    double sum = static_cast<double>(n); // k = 0 term
    double coeff = 1.0;                  // u^k / k!
    for (int k = 1; k <= term_cap; ++k) {
        coeff *= u / static_cast<double>(k);
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = 0; j < N; ++j) {
                double acc = 0.0;
                for (std::size_t l = 0; l < N; ++l) acc += power[i * N + l] * q[l * N + j];
                next[i * N + j] = acc;
            }
        }
        power.swap(next);
        double tr = 0.0;
        for (std::size_t i = 0; i < N; ++i) tr += power[i * N + i];
        sum += coeff * tr;
        // 0 <= tr(Q^k) <= n, so once coefficients decay geometrically the
        // whole tail is bounded by twice the next term's ceiling.
        if (static_cast<double>(k + 1) >= 2.0 * u && static_cast<double>(n) * coeff <= 0.5 * rel_tol * sum)
            return sum;
    }
    throw numerical_error("estrada series: no convergence within " + std::to_string(term_cap) +
                          " terms");
}

} // namespace distspec

#pragma once

// Bounds on the distance Estrada index DEE = sum_i exp(mu_i) and on
// the distance spectral radius mu_1, plus equality-case detection.
// The identifiers are stable across the JSON/CSV surface:
//
//   EQ4_LOWER   DEE >= sqrt(n^2 + 4m)
//   EQ4_UPPER   DEE <= n - 1 + exp(diam * sqrt(n(n-1)))
//   EQ5         DEE - E_D <= n - 1 - y + exp(y),  y = diam * sqrt(n(n-1))
//   EQ6         DEE <= n - 1 + exp(E_D)
//   EQ7         DEE >= f(sqrt(S_{t+1}/S_t))
//   EQ11        DEE >= f(2W/n)
//   EQ14        DEE >= exp(x) + exp(-x) + n - 2,  x = 2(n-1) - 2m/n
//   EQ19_LOWER  DEE >= E_D(e-1)/2 + n - n_plus
//   EQ19_UPPER  DEE <= n - 1 + exp(E_D/2)
//
//   MU1_LEMMA21     mu_1 >= sqrt(S_{t+1}/S_t)
//   MU1_EQ12_CHAIN  mu_1 >= sqrt(sum T_i^2 / sum D_i^2)
//   MU1_EQ13_CHAIN  mu_1 >= 2W/n
//   MU1_LEMMA23     mu_1 >= 2(n-1) - 2m/n
//
// where f(x) = exp(x) + (n-1) exp(-x/(n-1)), increasing for x >= 0,
// E_D = sum_i |mu_i|, and n_plus counts positive eigenvalues. EQ14
// does not hold on every connected graph; the harness tags its
// failures as known-open rather than hard violations.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "distspec/distance.hpp"
#include "distspec/errors.hpp"
#include "distspec/graph.hpp"
#include "distspec/spectral.hpp"

namespace distspec {

enum class BoundId {
    eq4_lower,
    eq4_upper,
    eq5,
    eq6,
    eq7,
    eq11,
    eq14,
    eq19_lower,
    eq19_upper,
    mu1_lemma21,
    mu1_eq12_chain,
    mu1_eq13_chain,
    mu1_lemma23,
};

inline constexpr BoundId all_bound_ids[] = {
    BoundId::eq4_lower,  BoundId::eq4_upper,     BoundId::eq5,
    BoundId::eq6,        BoundId::eq7,           BoundId::eq11,
    BoundId::eq14,       BoundId::eq19_lower,    BoundId::eq19_upper,
    BoundId::mu1_lemma21, BoundId::mu1_eq12_chain, BoundId::mu1_eq13_chain,
    BoundId::mu1_lemma23,
};

inline const char* to_string(BoundId id) {
    switch (id) {
        case BoundId::eq4_lower: return "EQ4_LOWER";
        case BoundId::eq4_upper: return "EQ4_UPPER";
        case BoundId::eq5: return "EQ5";
        case BoundId::eq6: return "EQ6";
        case BoundId::eq7: return "EQ7";
        case BoundId::eq11: return "EQ11";
        case BoundId::eq14: return "EQ14";
        case BoundId::eq19_lower: return "EQ19_LOWER";
        case BoundId::eq19_upper: return "EQ19_UPPER";
        case BoundId::mu1_lemma21: return "MU1_LEMMA21";
        case BoundId::mu1_eq12_chain: return "MU1_EQ12_CHAIN";
        case BoundId::mu1_eq13_chain: return "MU1_EQ13_CHAIN";
        case BoundId::mu1_lemma23: return "MU1_LEMMA23";
    }
    return "?";
}

inline std::optional<BoundId> bound_id_from_string(const std::string& s) {
    for (BoundId id : all_bound_ids)
        if (s == to_string(id)) return id;
    return std::nullopt;
}

enum class BoundKind { lower, upper };

inline const char* to_string(BoundKind k) { return k == BoundKind::lower ? "lower" : "upper"; }

struct BoundReport {
    BoundId bound_id{};
    BoundKind kind{};
    double bound_value = 0.0;
    double actual_value = 0.0;
    bool satisfied = false;
    double slack = 0.0;  // lower: actual - bound, upper: bound - actual
    bool equality = false;
    std::optional<double> alpha; // set only where the bound depends on them
    std::optional<int> t;
};

inline constexpr double default_equality_tol = 1e-6;

namespace detail {

// exp(x) + (n-1) exp(-x/(n-1)); the shared shape of the EQ7/EQ11 bounds.
inline double chain_f(int n, double x) {
    return std::exp(x) + (n - 1) * std::exp(-x / (n - 1));
}

inline BoundReport make_report(BoundId id, BoundKind kind, double bound, double actual, double tol,
                               std::optional<double> alpha = std::nullopt,
                               std::optional<int> t = std::nullopt) {
    BoundReport r;
    r.bound_id = id;
    r.kind = kind;
    r.bound_value = bound;
    r.actual_value = actual;
    r.slack = kind == BoundKind::lower ? actual - bound : bound - actual;
    double scale = std::max(1.0, std::abs(actual));
    r.satisfied = r.slack >= -tol * scale;
    r.equality = std::abs(r.slack) <= tol * scale;
    r.alpha = alpha;
    r.t = t;
    return r;
}

} // namespace detail

struct Eq4Bounds {
    double lower = 0.0;
    double upper = 0.0;
};

inline Eq4Bounds bound_eq4(int n, std::int64_t m, int diameter) {
    Eq4Bounds b;
    b.lower = std::sqrt(static_cast<double>(n) * n + 4.0 * static_cast<double>(m));
    b.upper = n - 1 + std::exp(diameter * std::sqrt(static_cast<double>(n) * (n - 1)));
    return b;
}

struct Eq5Eq6 {
    double eq5_rhs = 0.0;   // upper bound on DEE - E_D
    double eq6_upper = 0.0; // upper bound on DEE
};

inline Eq5Eq6 bound_eq5_eq6(int n, int diameter, double e_d) {
    double y = diameter * std::sqrt(static_cast<double>(n) * (n - 1));
    Eq5Eq6 b;
    b.eq5_rhs = n - 1 - y + std::exp(y);
    b.eq6_upper = n - 1 + std::exp(e_d);
    return b;
}

// sqrt(S_{t+1}/S_t), valid for any real alpha since every D_i >= 1.
inline double mu1_lower_power(const PowerSequence& seq, int t) {
    if (t < 1 || t >= seq.depth)
        throw input_error("mu1_lower_power: need 1 <= t <= depth-1, got t=" + std::to_string(t) +
                          " with depth " + std::to_string(seq.depth));
    double st = seq.s(t);
    double st1 = seq.s(t + 1);
    if (!std::isfinite(st) || !std::isfinite(st1) || st <= 0.0)
        throw numerical_error("mu1_lower_power: power sequence not finite at t=" + std::to_string(t));
    return std::sqrt(st1 / st);
}

struct Mu1Chain {
    double r1 = 0.0; // sqrt(sum T_i^2 / sum D_i^2)
    double r2 = 0.0; // sqrt(sum D_i^2 / n)
    double r3 = 0.0; // 2W/n
};

// mu_1 >= r1 >= r2 >= r3 on every connected graph with n >= 2.
inline Mu1Chain mu1_lower_chain(const DistanceProfile& p) {
    if (p.n < 2)
        throw input_error("mu1_lower_chain: needs at least 2 vertices");
    double sd2 = 0.0, st2 = 0.0; // sums of squares overflow int64 around n ~ 200
    for (std::int64_t d : p.dist_degrees) sd2 += static_cast<double>(d) * static_cast<double>(d);
    for (std::int64_t t : p.second_degrees) st2 += static_cast<double>(t) * static_cast<double>(t);
    Mu1Chain c;
    c.r1 = std::sqrt(st2 / sd2);
    c.r2 = std::sqrt(sd2 / p.n);
    c.r3 = 2.0 * static_cast<double>(p.wiener) / p.n;
    return c;
}

inline double mu1_lower_size(int n, std::int64_t m) {
    if (n < 2)
        throw input_error("mu1_lower_size: needs at least 2 vertices");
    return 2.0 * (n - 1) - 2.0 * static_cast<double>(m) / n;
}

inline double bound_eq7(int n, double mu1_lower) {
    if (n < 2)
        throw input_error("bound_eq7: needs at least 2 vertices");
    return detail::chain_f(n, mu1_lower);
}

inline double bound_eq11(int n, std::int64_t wiener) {
    if (n < 2)
        throw input_error("bound_eq11: needs at least 2 vertices");
    return detail::chain_f(n, 2.0 * static_cast<double>(wiener) / n);
}

inline double bound_eq14(int n, std::int64_t m) {
    if (n < 2)
        throw input_error("bound_eq14: needs at least 2 vertices");
    double x = 2.0 * (n - 1) - 2.0 * static_cast<double>(m) / n;
    return std::exp(x) + std::exp(-x) + n - 2;
}

struct Eq19Bounds {
    double lower = 0.0;
    double upper = 0.0;
};

inline Eq19Bounds bound_eq19(int n, int n_plus, double e_d) {
    Eq19Bounds b;
    b.lower = 0.5 * e_d * (std::exp(1.0) - 1.0) + n - n_plus;
    b.upper = n - 1 + std::exp(0.5 * e_d);
    return b;
}

struct EqualityFlags {
    bool is_k1 = false;
    bool is_k2 = false;
    bool is_complete = false;             // complete with n >= 2 (K_1 excluded)
    bool is_regular_diameter_two = false; // regular and diameter <= 2
    bool two_distinct_d_eigenvalues = false;
};

inline int eigenvalue_cluster_count(const DistanceSpectrum& spec,
                                    double tol = default_equality_tol) {
    if (spec.eigenvalues.empty()) return 0;
    int clusters = 1;
    for (std::size_t i = 0; i + 1 < spec.eigenvalues.size(); ++i)
        if (spec.eigenvalues[i] - spec.eigenvalues[i + 1] > tol) ++clusters;
    return clusters;
}

inline EqualityFlags detect_equality_cases(const Graph& g, const DistanceProfile& p,
                                           const DistanceSpectrum& spec,
                                           double tol = default_equality_tol) {
    EqualityFlags f;
    f.is_k1 = g.n == 1;
    f.is_k2 = g.n == 2 && g.m() == 1;
    f.is_complete = g.n >= 2 && is_complete(g);
    auto deg = degrees(g);
    bool regular = true;
    for (int d : deg)
        if (d != deg.front()) { regular = false; break; }
    f.is_regular_diameter_two = regular && p.diameter <= 2;
    f.two_distinct_d_eigenvalues = eigenvalue_cluster_count(spec, tol) == 2;
    return f;
}

inline EqualityFlags detect_equality_cases(const Graph& g, const DistanceProfile& p,
                                           double tol = default_equality_tol) {
    return detect_equality_cases(g, p, d_eigenvalues(p), tol);
}

// Every applicable bound in identifier order: 13 reports for n >= 2,
// 6 for the single-vertex graph (the mu_1 and power-sequence bounds
// need a second vertex).
inline std::vector<BoundReport> evaluate_all(const Graph& g, const DistanceProfile& p,
                                             const DistanceSpectrum& spec, double alpha = 1.0,
                                             int t = 2, double tol = default_equality_tol) {
    if (t < 1 || t + 1 > max_power_depth)
        throw input_error("evaluate_all: t must lie in [1," + std::to_string(max_power_depth - 1) +
                          "], got " + std::to_string(t));
    if (!(tol >= 0.0))
        throw input_error("evaluate_all: tolerance must be non-negative");

    const int n = g.n;
    const double dee = distance_estrada(spec);
    const double ed = distance_energy(spec);
    const double mu1 = spec.eigenvalues.front();
    using detail::make_report;

    std::vector<BoundReport> out;
    out.reserve(n >= 2 ? 13 : 6);

    auto e4 = bound_eq4(n, g.m(), p.diameter);
    out.push_back(make_report(BoundId::eq4_lower, BoundKind::lower, e4.lower, dee, tol));
    out.push_back(make_report(BoundId::eq4_upper, BoundKind::upper, e4.upper, dee, tol));

    auto e56 = bound_eq5_eq6(n, p.diameter, ed);
    out.push_back(make_report(BoundId::eq5, BoundKind::upper, e56.eq5_rhs, dee - ed, tol));
    out.push_back(make_report(BoundId::eq6, BoundKind::upper, e56.eq6_upper, dee, tol));

    double power_lb = 0.0;
    if (n >= 2) {
        auto seq = power_sequence(p, alpha, t + 1);
        power_lb = mu1_lower_power(seq, t);
        out.push_back(make_report(BoundId::eq7, BoundKind::lower, bound_eq7(n, power_lb), dee, tol,
                                  alpha, t));
        out.push_back(make_report(BoundId::eq11, BoundKind::lower, bound_eq11(n, p.wiener), dee, tol));
        out.push_back(make_report(BoundId::eq14, BoundKind::lower, bound_eq14(n, g.m()), dee, tol));
    }

    auto e19 = bound_eq19(n, spec.n_plus, ed);
    out.push_back(make_report(BoundId::eq19_lower, BoundKind::lower, e19.lower, dee, tol));
    out.push_back(make_report(BoundId::eq19_upper, BoundKind::upper, e19.upper, dee, tol));

    if (n >= 2) {
        out.push_back(make_report(BoundId::mu1_lemma21, BoundKind::lower, power_lb, mu1, tol, alpha, t));
        auto chain = mu1_lower_chain(p);
        out.push_back(make_report(BoundId::mu1_eq12_chain, BoundKind::lower, chain.r1, mu1, tol));
        out.push_back(make_report(BoundId::mu1_eq13_chain, BoundKind::lower, chain.r3, mu1, tol));
        out.push_back(make_report(BoundId::mu1_lemma23, BoundKind::lower, mu1_lower_size(n, g.m()),
                                  mu1, tol));
    }
    return out;
}

inline std::vector<BoundReport> evaluate_all(const Graph& g, double alpha = 1.0, int t = 2,
                                             double tol = default_equality_tol) {
    auto p = distance_profile(g);
    return evaluate_all(g, p, d_eigenvalues(p), alpha, t, tol);
}

namespace detail {

inline std::string fmt_fixed(double v, int places) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
    return buf;
}

// Machine outputs carry 6 decimals; round through the printed form so
// JSON and CSV agree exactly.
inline double round_places(double v, int places = 6) {
    if (!std::isfinite(v)) return v;
    return std::strtod(fmt_fixed(v, places).c_str(), nullptr);
}

} // namespace detail

inline nlohmann::ordered_json report_to_json(const BoundReport& r) {
    nlohmann::ordered_json j;
    j["bound_id"] = to_string(r.bound_id);
    j["kind"] = to_string(r.kind);
    j["bound_value"] = detail::round_places(r.bound_value);
    j["actual_value"] = detail::round_places(r.actual_value);
    j["satisfied"] = r.satisfied;
    j["slack"] = detail::round_places(r.slack);
    j["equality"] = r.equality;
    if (r.alpha)
        j["alpha"] = detail::round_places(*r.alpha);
    else
        j["alpha"] = nullptr;
    if (r.t)
        j["t"] = *r.t;
    else
        j["t"] = nullptr;
    return j;
}

inline std::string report_csv_header() {
    return "bound_id,kind,bound_value,actual_value,satisfied,slack,equality,alpha,t";
}

inline std::string report_csv_row(const BoundReport& r) {
    std::string row;
    row += to_string(r.bound_id);
    row += ',';
    row += to_string(r.kind);
    row += ',';
    row += detail::fmt_fixed(r.bound_value, 6);
    row += ',';
    row += detail::fmt_fixed(r.actual_value, 6);
    row += ',';
    row += r.satisfied ? "true" : "false";
    row += ',';
    row += detail::fmt_fixed(r.slack, 6);
    row += ',';
    row += r.equality ? "true" : "false";
    row += ',';
    if (r.alpha) row += detail::fmt_fixed(*r.alpha, 6);
    row += ',';
    if (r.t) row += std::to_string(*r.t);
    return row;
}

} // namespace distspec

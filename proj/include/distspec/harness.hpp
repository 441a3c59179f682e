#pragma once

// Verification harness: run the full bound battery over graph
// families, random ensembles, and exhaustive small-n enumerations,
// and aggregate violations, equality hits, and tightness statistics.
//
// Determinism contract: random cells draw from mt19937_64 streams
// whose seeds are derived per (cell, sample) with splitmix64, so a
// fixed (config, seed) pair produces the same graphs on every
// platform and thread count. Graphs are generated serially; only the
// per-graph evaluation fans out across threads, and results merge
// back in generation order.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "distspec/bounds.hpp"
#include "distspec/distance.hpp"
#include "distspec/errors.hpp"
#include "distspec/formats.hpp"
#include "distspec/graph.hpp"
#include "distspec/spectral.hpp"

namespace distspec {

inline constexpr int max_scan_vertices = 256;
inline constexpr int max_exhaustive_vertices = 8;

// One generation cell: a named family instance, or a G(n,p) ensemble
// drawn count times.
struct FamilySpec {
    bool random = false;
    Family family = Family::path; // named cells
    int n = 0;
    int b = 0;        // second part size for complete_bipartite
    double p = 0.5;   // gnp cells
};

struct ScanConfig {
    std::vector<FamilySpec> families;
    int count = 1; // samples per random cell; named cells yield one graph
    std::uint64_t seed = 0;
    double alpha = 1.0;
    int t = 2;
    double tol = default_equality_tol;
    int threads = 1;
    std::string output_path;          // empty = stdout
    std::string output_format = "csv"; // "csv" or "json"
};

inline void validate(const ScanConfig& cfg) {
    if (cfg.families.empty())
        throw input_error("scan: no families given");
    if (cfg.count < 1)
        throw input_error("scan: count must be positive, got " + std::to_string(cfg.count));
    if (cfg.t < 1 || cfg.t + 1 > max_power_depth)
        throw input_error("scan: t must lie in [1," + std::to_string(max_power_depth - 1) + "]");
    if (!std::isfinite(cfg.alpha))
        throw input_error("scan: alpha must be finite");
    if (!(cfg.tol >= 0.0))
        throw input_error("scan: tolerance must be non-negative");
    if (cfg.threads < 1)
        throw input_error("scan: thread count must be positive");
    if (cfg.output_format != "csv" && cfg.output_format != "json")
        throw input_error("scan: unknown output format \"" + cfg.output_format + "\"");
    for (const auto& f : cfg.families) {
        int total = f.family == Family::complete_bipartite && !f.random ? f.n + f.b : f.n;
        if (total < 1 || total > max_scan_vertices)
            throw input_error("scan: vertex count " + std::to_string(total) + " outside [1," +
                              std::to_string(max_scan_vertices) + "]");
        if (f.random) {
            if (!(f.p > 0.0) || f.p > 1.0)
                throw input_error("scan: edge probability must lie in (0,1]");
        } else {
            switch (f.family) {
                case Family::path:
                case Family::complete: break;
                case Family::cycle:
                    if (f.n < 3) throw input_error("scan: cycle needs at least 3 vertices");
                    break;
                case Family::star:
                    if (f.n < 2) throw input_error("scan: star needs at least 2 vertices");
                    break;
                case Family::complete_bipartite:
                    if (f.n < 1 || f.b < 1)
                        throw input_error("scan: complete_bipartite needs two positive part sizes");
                    break;
            }
        }
    }
}

struct ViolationRecord {
    std::string graph6;
    BoundId bound_id{};
    double slack = 0.0;
    bool known_open = false; // EQ14: empirically violated, tracked separately
};

struct EqualityHit {
    std::string graph6;
    BoundId bound_id{};
};

// Relative slack, slack / max(1, |actual|); finite entries only.
struct TightnessStats {
    double min = 0.0;
    double max = 0.0;
    double sum = 0.0;
    std::int64_t count = 0;

    double mean() const { return count > 0 ? sum / static_cast<double>(count) : 0.0; }

    void add(double rel) {
        if (count == 0) {
            min = max = rel;
        } else {
            if (rel < min) min = rel;
            if (rel > max) max = rel;
        }
        sum += rel;
        ++count;
    }
};

struct VerificationSummary {
    std::string generator;
    std::uint64_t seed = 0;
    double alpha = 1.0;
    int t = 2;
    double tol = default_equality_tol;
    std::int64_t graphs_tested = 0;
    std::vector<ViolationRecord> violations;
    std::vector<EqualityHit> equality_hits;
    std::map<BoundId, TightnessStats> tightness;
    std::vector<std::string> infrastructure_failures;

    bool hard_violations() const {
        for (const auto& v : violations)
            if (!v.known_open) return true;
        return false;
    }
    bool open_violations() const {
        for (const auto& v : violations)
            if (v.known_open) return true;
        return false;
    }
};

namespace detail {

struct PreparedGraph {
    Graph g;
    std::string g6;
};

inline std::vector<PreparedGraph> prepare_graphs(const ScanConfig& cfg,
                                                 std::vector<std::string>& failures) {
    std::vector<PreparedGraph> out;
    std::uint64_t cell = 0;
    for (const auto& f : cfg.families) {
        if (!f.random) {
            out.push_back({generate_family(f.family, f.n, f.b), ""});
        } else {
            std::uint64_t cell_seed = derive_seed(cfg.seed, cell);
            for (int s = 0; s < cfg.count; ++s) {
                try {
                    out.push_back(
                        {random_connected_gnp(f.n, f.p, derive_seed(cell_seed, static_cast<std::uint64_t>(s))),
                         ""});
                } catch (const input_error& e) {
                    failures.push_back("gnp cell n=" + std::to_string(f.n) + " sample " +
                                       std::to_string(s) + ": " + e.what());
                }
            }
        }
        ++cell;
    }
    for (auto& pg : out) pg.g6 = to_graph6(pg.g);
    return out;
}

struct GraphOutcome {
    bool failed = false;
    std::string failure;
    int n = 0;
    std::int64_t m = 0;
    int diameter = 0;
    std::int64_t wiener = 0;
    std::vector<BoundReport> reports;
};

inline GraphOutcome evaluate_one(const PreparedGraph& pg, double alpha, int t, double tol) {
    GraphOutcome o;
    try {
        auto p = distance_profile(pg.g);
        auto spec = d_eigenvalues(p);
        o.reports = evaluate_all(pg.g, p, spec, alpha, t, tol);
        o.n = pg.g.n;
        o.m = pg.g.m();
        o.diameter = p.diameter;
        o.wiener = p.wiener;
    } catch (const std::exception& e) {
        o.failed = true;
        o.failure = pg.g6 + ": " + e.what();
    }
    return o;
}

// Work-steal by index; slot i always holds graph i's outcome, so the
// merged result is independent of the thread count.
inline std::vector<GraphOutcome> evaluate_graphs(const std::vector<PreparedGraph>& graphs,
                                                 const ScanConfig& cfg) {
    std::vector<GraphOutcome> out(graphs.size());
    std::size_t workers = static_cast<std::size_t>(cfg.threads);
    if (workers > graphs.size()) workers = graphs.size();
    if (workers <= 1) {
        for (std::size_t i = 0; i < graphs.size(); ++i)
            out[i] = evaluate_one(graphs[i], cfg.alpha, cfg.t, cfg.tol);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < graphs.size(); i = next.fetch_add(1))
            out[i] = evaluate_one(graphs[i], cfg.alpha, cfg.t, cfg.tol);
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    return out;
}

inline void accumulate(VerificationSummary& s, const std::string& g6, const GraphOutcome& o) {
    if (o.failed) {
        s.infrastructure_failures.push_back(o.failure);
        return;
    }
    ++s.graphs_tested;
    for (const auto& r : o.reports) {
        if (!r.satisfied)
            s.violations.push_back({g6, r.bound_id, r.slack, r.bound_id == BoundId::eq14});
        if (r.equality) s.equality_hits.push_back({g6, r.bound_id});
        double rel = r.slack / std::max(1.0, std::abs(r.actual_value));
        if (std::isfinite(rel)) s.tightness[r.bound_id].add(rel);
    }
}

} // namespace detail

inline VerificationSummary verify(const ScanConfig& cfg) {
    validate(cfg);
    VerificationSummary s;
    s.generator = "mt19937_64/splitmix64:v1";
    s.seed = cfg.seed;
    s.alpha = cfg.alpha;
    s.t = cfg.t;
    s.tol = cfg.tol;
    auto graphs = detail::prepare_graphs(cfg, s.infrastructure_failures);
    auto outcomes = detail::evaluate_graphs(graphs, cfg);
    for (std::size_t i = 0; i < graphs.size(); ++i)
        detail::accumulate(s, graphs[i].g6, outcomes[i]);
    return s;
}

struct ScanRow {
    std::string graph6;
    int n = 0;
    std::int64_t m = 0;
    int diameter = 0;
    std::int64_t wiener = 0;
    BoundReport report;
};

// Tightness table rows, sorted by (n, graph6, bound id). Unlike
// verify, any generation or evaluation failure aborts the scan.
inline std::vector<ScanRow> scan_tightness(const ScanConfig& cfg) {
    validate(cfg);
    std::vector<std::string> failures;
    auto graphs = detail::prepare_graphs(cfg, failures);
    if (!failures.empty())
        throw input_error("scan: " + failures.front());
    auto outcomes = detail::evaluate_graphs(graphs, cfg);
    std::vector<ScanRow> rows;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const auto& o = outcomes[i];
        if (o.failed)
            throw numerical_error("scan: " + o.failure);
        for (const auto& r : o.reports)
            rows.push_back({graphs[i].g6, o.n, o.m, o.diameter, o.wiener, r});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.graph6 != b.graph6) return a.graph6 < b.graph6;
        return static_cast<int>(a.report.bound_id) < static_cast<int>(b.report.bound_id);
    });
    return rows;
}

inline std::string scan_csv_header() {
    return "graph6,n,m,diameter,wiener,bound_id,bound_value,actual_value,slack,equality";
}

inline std::string scan_csv_row(const ScanRow& row) {
    std::string s;
    s += row.graph6;
    s += ',';
    s += std::to_string(row.n);
    s += ',';
    s += std::to_string(row.m);
    s += ',';
    s += std::to_string(row.diameter);
    s += ',';
    s += std::to_string(row.wiener);
    s += ',';
    s += to_string(row.report.bound_id);
    s += ',';
    s += detail::fmt_fixed(row.report.bound_value, 6);
    s += ',';
    s += detail::fmt_fixed(row.report.actual_value, 6);
    s += ',';
    s += detail::fmt_fixed(row.report.slack, 6);
    s += ',';
    s += row.report.equality ? "true" : "false";
    return s;
}

inline std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::string out = scan_csv_header();
    out += '\n';
    for (const auto& r : rows) {
        out += scan_csv_row(r);
        out += '\n';
    }
    return out;
}

inline std::string scan_csv(const ScanConfig& cfg) { return scan_csv(scan_tightness(cfg)); }

inline nlohmann::ordered_json scan_json(const ScanConfig& cfg, const std::vector<ScanRow>& rows) {
    nlohmann::ordered_json j;
    j["version"] = "distspec-report/1";
    j["generator"] = "mt19937_64/splitmix64:v1";
    j["seed"] = cfg.seed;
    j["alpha"] = detail::round_places(cfg.alpha);
    j["t"] = cfg.t;
    j["tol"] = cfg.tol;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["graph6"] = r.graph6;
        row["n"] = r.n;
        row["m"] = r.m;
        row["diameter"] = r.diameter;
        row["wiener"] = r.wiener;
        row["bound_id"] = to_string(r.report.bound_id);
        row["bound_value"] = detail::round_places(r.report.bound_value);
        row["actual_value"] = detail::round_places(r.report.actual_value);
        row["slack"] = detail::round_places(r.report.slack);
        row["equality"] = r.report.equality;
        arr.push_back(std::move(row));
    }
    j["rows"] = std::move(arr);
    return j;
}

inline nlohmann::ordered_json scan_json(const ScanConfig& cfg) {
    return scan_json(cfg, scan_tightness(cfg));
}

// All connected labeled graphs on exactly n vertices. Mask order over
// the C(n,2) possible edges makes the output reproducible; evaluation
// still fans out across threads by mask block.
inline VerificationSummary exhaustive_small(int n, double alpha = 1.0, int t = 2,
                                            double tol = default_equality_tol, int threads = 1) {
    if (n < 1 || n > max_exhaustive_vertices)
        throw input_error("exhaustive_small: n must lie in [1," +
                          std::to_string(max_exhaustive_vertices) + "], got " + std::to_string(n));
    if (t < 1 || t + 1 > max_power_depth)
        throw input_error("exhaustive_small: t must lie in [1," + std::to_string(max_power_depth - 1) +
                          "]");
    if (threads < 1)
        throw input_error("exhaustive_small: thread count must be positive");

    std::vector<Edge> all_pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) all_pairs.emplace_back(i, j);
    const int k = static_cast<int>(all_pairs.size());
    const std::uint64_t total = 1ULL << k;

    auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
        VerificationSummary part;
        part.alpha = alpha;
        part.t = t;
        part.tol = tol;
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            std::vector<Edge> edges;
            for (int b = 0; b < k; ++b)
                if ((mask >> b) & 1) edges.push_back(all_pairs[static_cast<std::size_t>(b)]);
            Graph g(n, std::move(edges));
            if (!is_connected(g)) continue;
            detail::PreparedGraph pg{std::move(g), ""};
            pg.g6 = to_graph6(pg.g);
            detail::accumulate(part, pg.g6, detail::evaluate_one(pg, alpha, t, tol));
        }
        return part;
    };

    VerificationSummary s;
    s.generator = "exhaustive-labeled:v1";
    s.alpha = alpha;
    s.t = t;
    s.tol = tol;

    std::uint64_t want = static_cast<std::uint64_t>(threads);
    if (want > total) want = total;
    if (want <= 1) {
        auto part = run_range(0, total);
        part.generator = s.generator;
        return part;
    }
    std::vector<VerificationSummary> parts(want);
    std::vector<std::thread> pool;
    std::uint64_t chunk = total / want + (total % want != 0);
    for (std::uint64_t w = 0; w < want; ++w) {
        std::uint64_t lo = w * chunk;
        std::uint64_t hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi, w] { parts[w] = run_range(lo, hi); });
    }
    for (auto& th : pool) th.join();
    for (const auto& part : parts) {
        s.graphs_tested += part.graphs_tested;
        s.violations.insert(s.violations.end(), part.violations.begin(), part.violations.end());
        s.equality_hits.insert(s.equality_hits.end(), part.equality_hits.begin(),
                               part.equality_hits.end());
        for (const auto& [id, ts] : part.tightness) {
            auto& dst = s.tightness[id];
            if (dst.count == 0) {
                dst = ts;
            } else if (ts.count > 0) {
                dst.min = std::min(dst.min, ts.min);
                dst.max = std::max(dst.max, ts.max);
                dst.sum += ts.sum;
                dst.count += ts.count;
            }
        }
        s.infrastructure_failures.insert(s.infrastructure_failures.end(),
                                         part.infrastructure_failures.begin(),
                                         part.infrastructure_failures.end());
    }
    return s;
}

inline void merge(VerificationSummary& into, const VerificationSummary& from) {
    if (into.generator.empty())
        into.generator = from.generator;
    else if (!from.generator.empty() && from.generator != into.generator)
        into.generator += "+" + from.generator;
    into.graphs_tested += from.graphs_tested;
    into.violations.insert(into.violations.end(), from.violations.begin(), from.violations.end());
    into.equality_hits.insert(into.equality_hits.end(), from.equality_hits.begin(),
                              from.equality_hits.end());
    for (const auto& [id, ts] : from.tightness) {
        auto& dst = into.tightness[id];
        if (dst.count == 0) {
            dst = ts;
        } else if (ts.count > 0) {
            dst.min = std::min(dst.min, ts.min);
            dst.max = std::max(dst.max, ts.max);
            dst.sum += ts.sum;
            dst.count += ts.count;
        }
    }
    into.infrastructure_failures.insert(into.infrastructure_failures.end(),
                                        from.infrastructure_failures.begin(),
                                        from.infrastructure_failures.end());
}

inline nlohmann::ordered_json summary_to_json(const VerificationSummary& s) {
    nlohmann::ordered_json j;
    j["version"] = "distspec-report/1";
    j["generator"] = s.generator;
    j["seed"] = s.seed;
    j["alpha"] = detail::round_places(s.alpha);
    j["t"] = s.t;
    j["tol"] = s.tol;
    j["graphs_tested"] = s.graphs_tested;
    auto viol = nlohmann::ordered_json::array();
    for (const auto& v : s.violations) {
        nlohmann::ordered_json e;
        e["graph6"] = v.graph6;
        e["bound_id"] = to_string(v.bound_id);
        e["slack"] = detail::round_places(v.slack);
        e["severity"] = v.known_open ? "known-open" : "violation";
        viol.push_back(std::move(e));
    }
    j["violations"] = std::move(viol);
    auto eq = nlohmann::ordered_json::array();
    for (const auto& h : s.equality_hits) {
        nlohmann::ordered_json e;
        e["graph6"] = h.graph6;
        e["bound_id"] = to_string(h.bound_id);
        eq.push_back(std::move(e));
    }
    j["equality_hits"] = std::move(eq);
    nlohmann::ordered_json stats;
    for (BoundId id : all_bound_ids) {
        auto it = s.tightness.find(id);
        if (it == s.tightness.end() || it->second.count == 0) continue;
        nlohmann::ordered_json e;
        e["min"] = detail::round_places(it->second.min);
        e["mean"] = detail::round_places(it->second.mean());
        e["max"] = detail::round_places(it->second.max);
        e["count"] = it->second.count;
        stats[to_string(id)] = std::move(e);
    }
    j["tightness_stats"] = std::move(stats);
    j["infrastructure_failures"] = s.infrastructure_failures;
    return j;
}

} // namespace distspec

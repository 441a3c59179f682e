#pragma once

// Command-line frontend. Five subcommands:
//
//   compute     invariants of one graph (n, m, diameter, W, spectrum,
//               both Estrada routes, energy, n_plus)
//   bounds      the full bound report for one graph
//   verify      bound verification over families / random ensembles
//   scan        tightness table as CSV or JSON
//   exhaustive  all labeled connected graphs for each n in a range
//
// Exit codes: 0 success, 1 bound violation (known-open EQ14 failures
// count only under --strict), 2 usage or input error, 3 numerical
// failure. stdout carries data; diagnostics go to stderr.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "distspec/bounds.hpp"
#include "distspec/distance.hpp"
#include "distspec/errors.hpp"
#include "distspec/formats.hpp"
#include "distspec/graph.hpp"
#include "distspec/harness.hpp"
#include "distspec/spectral.hpp"

namespace distspec {
namespace cli {

namespace detail {

using distspec::detail::fmt_fixed;

inline int parse_int_token(const std::string& s, const std::string& what) {
    std::size_t idx = 0;
    int v = 0;
    try {
        v = std::stoi(s, &idx);
    } catch (const std::exception&) {
        throw input_error("invalid " + what + ": \"" + s + "\"");
    }
    if (idx != s.size())
        throw input_error("invalid " + what + ": \"" + s + "\"");
    return v;
}

struct Range {
    int lo = 0;
    int hi = 0;
};

// "N" or "LO..HI"
inline Range parse_range(const std::string& s) {
    auto pos = s.find("..");
    if (pos == std::string::npos) {
        int v = parse_int_token(s, "count");
        return {v, v};
    }
    Range r{parse_int_token(s.substr(0, pos), "range"),
            parse_int_token(s.substr(pos + 2), "range")};
    if (r.lo > r.hi)
        throw input_error("empty range \"" + s + "\"");
    return r;
}

inline std::vector<double> parse_p_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t idx = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &idx);
        } catch (const std::exception&) {
            throw input_error("invalid probability \"" + item + "\"");
        }
        if (idx != item.size())
            throw input_error("invalid probability \"" + item + "\"");
        out.push_back(v);
    }
    if (out.empty())
        throw input_error("empty probability list \"" + s + "\"");
    return out;
}

inline std::string slurp(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline Graph read_graph(const std::string& input, std::string format, std::istream& stdin_stream) {
    std::string text;
    if (input == "-") {
        text = slurp(stdin_stream);
        if (format.empty()) format = "edgelist";
    } else {
        std::ifstream f(input, std::ios::binary);
        if (!f)
            throw input_error("cannot open input file: " + input);
        text = slurp(f);
        if (format.empty())
            format = ends_with(input, ".g6") ? "graph6" : "edgelist";
    }
    return format == "graph6" ? parse_graph6(text) : parse_edgelist(text);
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw input_error("cannot open output file: " + path);
    f << content;
    if (!f)
        throw input_error("failed writing output file: " + path);
}

// Expand CLI family flags into per-cell specs. complete_bipartite
// splits each n into floor/ceil halves.
inline std::vector<FamilySpec> expand_families(const std::string& family, const std::string& n_arg,
                                               const std::string& p_arg) {
    if (family.empty())
        throw input_error("missing --family");
    if (n_arg.empty())
        throw input_error("missing --n");
    Range r = parse_range(n_arg);
    std::vector<FamilySpec> cells;
    if (family == "gnp") {
        auto ps = parse_p_list(p_arg.empty() ? "0.5" : p_arg);
        for (int n = r.lo; n <= r.hi; ++n)
            for (double p : ps) cells.push_back({true, Family::path, n, 0, p});
        return cells;
    }
    if (!p_arg.empty())
        throw input_error("--p only applies to --family gnp");
    Family f;
    if (family == "path")
        f = Family::path;
    else if (family == "cycle")
        f = Family::cycle;
    else if (family == "star")
        f = Family::star;
    else if (family == "complete")
        f = Family::complete;
    else if (family == "complete_bipartite")
        f = Family::complete_bipartite;
    else
        throw input_error("unknown family \"" + family + "\"");
    for (int n = r.lo; n <= r.hi; ++n) {
        FamilySpec cell{false, f, n, 0, 0.5};
        if (f == Family::complete_bipartite) {
            if (n < 2)
                throw input_error("complete_bipartite needs at least 2 vertices");
            cell.n = n / 2;
            cell.b = n - n / 2;
        }
        cells.push_back(cell);
    }
    return cells;
}

inline int violation_exit(bool hard, bool open, bool strict) {
    if (hard) return 1;
    if (open && strict) return 1;
    return 0;
}

inline std::pair<bool, bool> classify_reports(const std::vector<BoundReport>& reports) {
    bool hard = false, open = false;
    for (const auto& r : reports) {
        if (r.satisfied) continue;
        if (r.bound_id == BoundId::eq14)
            open = true;
        else
            hard = true;
    }
    return {hard, open};
}

inline std::string bounds_table(const std::vector<BoundReport>& reports) {
    char line[256];
    std::string out;
    std::snprintf(line, sizeof line, "%-16s %-6s %14s %14s %10s %9s %14s\n", "bound_id", "kind",
                  "bound_value", "actual_value", "satisfied", "equality", "slack");
    out += line;
    for (const auto& r : reports) {
        std::snprintf(line, sizeof line, "%-16s %-6s %14s %14s %10s %9s %14s\n",
                      to_string(r.bound_id), to_string(r.kind), fmt_fixed(r.bound_value, 3).c_str(),
                      fmt_fixed(r.actual_value, 3).c_str(), r.satisfied ? "yes" : "no",
                      r.equality ? "yes" : "no", fmt_fixed(r.slack, 3).c_str());
        out += line;
    }
    return out;
}

inline std::string bounds_csv(const std::vector<BoundReport>& reports) {
    std::string out = report_csv_header();
    out += '\n';
    for (const auto& r : reports) {
        out += report_csv_row(r);
        out += '\n';
    }
    return out;
}

inline std::string summary_human(const VerificationSummary& s) {
    std::string out;
    long long open = 0, hard = 0;
    for (const auto& v : s.violations) (v.known_open ? open : hard)++;
    out += "generator " + s.generator + "\n";
    out += "seed " + std::to_string(s.seed) + "\n";
    out += "graphs_tested " + std::to_string(s.graphs_tested) + "\n";
    out += "violations " + std::to_string(hard) + " (known-open " + std::to_string(open) + ")\n";
    out += "equality_hits " + std::to_string(s.equality_hits.size()) + "\n";
    out += "infrastructure_failures " + std::to_string(s.infrastructure_failures.size()) + "\n";
    for (const auto& v : s.violations)
        out += "violation " + v.graph6 + " " + std::string(to_string(v.bound_id)) + " slack " +
               fmt_fixed(v.slack, 3) + (v.known_open ? " known-open" : "") + "\n";
    for (const auto& msg : s.infrastructure_failures) out += "infrastructure_failure " + msg + "\n";
    if (!s.tightness.empty()) {
        out += "tightness (relative slack):\n";
        char line[256];
        for (BoundId id : all_bound_ids) {
            auto it = s.tightness.find(id);
            if (it == s.tightness.end() || it->second.count == 0) continue;
            std::snprintf(line, sizeof line, "  %-16s min %s  mean %s  max %s  count %lld\n",
                          to_string(id), fmt_fixed(it->second.min, 3).c_str(),
                          fmt_fixed(it->second.mean(), 3).c_str(),
                          fmt_fixed(it->second.max, 3).c_str(),
                          static_cast<long long>(it->second.count));
            out += line;
        }
    }
    return out;
}

} // namespace detail

// Parse-and-dispatch entry point. argv excludes the program name;
// streams are injectable for tests.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"distance-spectral invariants and bound verification"};
    app.name("distspec");
    app.require_subcommand(1);

    std::string input = "-";
    std::string format;
    std::string family, n_arg, p_arg;
    std::string output;
    double alpha = 1.0;
    int t = 2;
    double tol = default_equality_tol;
    std::uint64_t seed = 0;
    int count = 1;
    int threads = 1;
    bool json = false;
    bool strict = false;

    auto add_input_flags = [&](CLI::App* cmd) {
        cmd->add_option("input", input, "input file, or - for stdin")->default_str("-");
        cmd->add_option("--format", format, "input format: graph6 | edgelist")
            ->check(CLI::IsMember({"graph6", "edgelist"}));
    };
    auto add_family_flags = [&](CLI::App* cmd) {
        cmd->add_option("--family", family,
                        "path | cycle | star | complete | complete_bipartite | gnp");
        cmd->add_option("--n", n_arg, "vertex count N or range LO..HI");
        cmd->add_option("--p", p_arg, "gnp edge probabilities, comma-separated");
        cmd->add_option("--count", count, "samples per gnp cell")->capture_default_str();
        cmd->add_option("--seed", seed, "random seed")->capture_default_str();
        cmd->add_option("--threads", threads, "evaluation threads")->capture_default_str();
    };
    auto add_eval_flags = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "distance-degree exponent")->capture_default_str();
        cmd->add_option("--t", t, "power-sequence index")->capture_default_str();
        cmd->add_option("--tol", tol, "equality tolerance")->capture_default_str();
    };

    CLI::App* compute = app.add_subcommand("compute", "invariants of one graph");
    add_input_flags(compute);
    compute->add_flag("--json", json, "JSON output");

    CLI::App* bounds = app.add_subcommand("bounds", "bound report for one graph");
    add_input_flags(bounds);
    add_eval_flags(bounds);
    bounds->add_flag("--json", json, "JSON output");
    bounds->add_flag("--strict", strict, "treat known-open EQ14 failures as violations");
    bounds->add_option("--output", output, "also write machine report (.json or CSV) here");

    CLI::App* verify_cmd = app.add_subcommand("verify", "verify bounds over families");
    add_family_flags(verify_cmd);
    add_eval_flags(verify_cmd);
    verify_cmd->add_flag("--json", json, "JSON summary on stdout");
    verify_cmd->add_flag("--strict", strict, "treat known-open EQ14 failures as violations");
    verify_cmd->add_option("--output", output, "write JSON summary here");

    CLI::App* scan = app.add_subcommand("scan", "bound tightness table");
    add_family_flags(scan);
    add_eval_flags(scan);
    scan->add_flag("--json", json, "JSON rows instead of CSV");
    scan->add_flag("--strict", strict, "treat known-open EQ14 failures as violations");
    scan->add_option("--output", output, "write the table here instead of stdout");

    CLI::App* exhaustive = app.add_subcommand("exhaustive", "all labeled connected graphs, n <= 8");
    exhaustive->add_option("--n", n_arg, "vertex count N or range LO..HI")->required();
    exhaustive->add_option("--threads", threads, "evaluation threads")->capture_default_str();
    add_eval_flags(exhaustive);
    exhaustive->add_flag("--json", json, "JSON summary on stdout");
    exhaustive->add_flag("--strict", strict, "treat known-open EQ14 failures as violations");
    exhaustive->add_option("--output", output, "write JSON summary here");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("distspec");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        for (CLI::App* sub : {compute, bounds, verify_cmd, scan, exhaustive})
            if (app.got_subcommand(sub)) {
                out << sub->help();
                return 0;
            }
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(compute)) {
            Graph g = detail::read_graph(input, format, in);
            auto p = distance_profile(g);
            auto spec = d_eigenvalues(p);
            double dee = distance_estrada(spec);
            double dee_series = distance_estrada_series(p);
            double ed = distance_energy(spec);
            if (json) {
                nlohmann::ordered_json j;
                j["version"] = "distspec-report/1";
                j["n"] = g.n;
                j["m"] = g.m();
                j["diameter"] = p.diameter;
                j["wiener"] = p.wiener;
                auto arr = nlohmann::ordered_json::array();
                for (double mu : spec.eigenvalues) arr.push_back(distspec::detail::round_places(mu));
                j["spectrum"] = std::move(arr);
                j["dee"] = distspec::detail::round_places(dee);
                j["dee_series"] = distspec::detail::round_places(dee_series);
                j["distance_energy"] = distspec::detail::round_places(ed);
                j["n_plus"] = spec.n_plus;
                j["residual"] = spec.residual;
                out << j.dump(2) << "\n";
            } else {
                out << "n " << g.n << "\n";
                out << "m " << g.m() << "\n";
                out << "diameter " << p.diameter << "\n";
                out << "wiener " << p.wiener << "\n";
                out << "spectrum";
                for (double mu : spec.eigenvalues) out << ' ' << detail::fmt_fixed(mu, 6);
                out << "\n";
                out << "DEE " << detail::fmt_fixed(dee, 6) << "\n";
                out << "DEE_series " << detail::fmt_fixed(dee_series, 6) << "\n";
                out << "E_D " << detail::fmt_fixed(ed, 6) << "\n";
                out << "n_plus " << spec.n_plus << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(bounds)) {
            Graph g = detail::read_graph(input, format, in);
            auto reports = evaluate_all(g, alpha, t, tol);
            if (json) {
                auto arr = nlohmann::ordered_json::array();
                for (const auto& r : reports) arr.push_back(report_to_json(r));
                out << arr.dump(2) << "\n";
            } else {
                out << detail::bounds_table(reports);
            }
            if (!output.empty()) {
                if (detail::ends_with(output, ".json")) {
                    auto arr = nlohmann::ordered_json::array();
                    for (const auto& r : reports) arr.push_back(report_to_json(r));
                    detail::write_file(output, arr.dump(2) + "\n");
                } else {
                    detail::write_file(output, detail::bounds_csv(reports));
                }
            }
            auto [hard, open] = detail::classify_reports(reports);
            return detail::violation_exit(hard, open, strict);
        }

        if (app.got_subcommand(verify_cmd)) {
            ScanConfig cfg;
            cfg.families = detail::expand_families(family, n_arg, p_arg);
            cfg.count = count;
            cfg.seed = seed;
            cfg.alpha = alpha;
            cfg.t = t;
            cfg.tol = tol;
            cfg.threads = threads;
            auto summary = verify(cfg);
            if (json)
                out << summary_to_json(summary).dump(2) << "\n";
            else
                out << detail::summary_human(summary);
            if (!output.empty())
                detail::write_file(output, summary_to_json(summary).dump(2) + "\n");
            return detail::violation_exit(summary.hard_violations(), summary.open_violations(),
                                          strict);
        }

        if (app.got_subcommand(scan)) {
            ScanConfig cfg;
            cfg.families = detail::expand_families(family, n_arg, p_arg);
            cfg.count = count;
            cfg.seed = seed;
            cfg.alpha = alpha;
            cfg.t = t;
            cfg.tol = tol;
            cfg.threads = threads;
            cfg.output_path = output;
            cfg.output_format = json ? "json" : "csv";
            auto rows = scan_tightness(cfg);
            std::string rendered =
                json ? scan_json(cfg, rows).dump(2) + "\n" : scan_csv(rows);
            if (!output.empty())
                detail::write_file(output, rendered);
            else
                out << rendered;
            bool hard = false, open = false;
            for (const auto& r : rows) {
                if (r.report.satisfied) continue;
                if (r.report.bound_id == BoundId::eq14)
                    open = true;
                else
                    hard = true;
            }
            return detail::violation_exit(hard, open, strict);
        }

        if (app.got_subcommand(exhaustive)) {
            auto r = detail::parse_range(n_arg);
            VerificationSummary merged;
            for (int n = r.lo; n <= r.hi; ++n) {
                auto part = exhaustive_small(n, alpha, t, tol, threads);
                merge(merged, part);
            }
            merged.alpha = alpha;
            merged.t = t;
            merged.tol = tol;
            if (json)
                out << summary_to_json(merged).dump(2) << "\n";
            else
                out << detail::summary_human(merged);
            if (!output.empty())
                detail::write_file(output, summary_to_json(merged).dump(2) + "\n");
            return detail::violation_exit(merged.hard_violations(), merged.open_violations(),
                                          strict);
        }
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    err << "error: no subcommand\n";
    return 2;
}

} // namespace cli
} // namespace distspec

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "distspec/cli.hpp"

using namespace distspec;
using Catch::Matchers::ContainsSubstring;

namespace {

struct RunResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    RunResult r;
    r.exit_code = cli::run(args, in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

const std::string p4_edgelist = "4 3\n0 1\n1 2\n2 3\n";
const std::string k2_edgelist = "2 1\n0 1\n";
const std::string k3_edgelist = "3 3\n0 1\n0 2\n1 2\n";

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    auto dir = std::filesystem::temp_directory_path() / "distspec-cli-tests";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    return path;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("compute on stdin") {
    auto r = run_cli({"compute"}, k2_edgelist);
    REQUIRE(r.exit_code == 0);
    REQUIRE_THAT(r.out, ContainsSubstring("n 2\n"));
    REQUIRE_THAT(r.out, ContainsSubstring("m 1\n"));
    REQUIRE_THAT(r.out, ContainsSubstring("diameter 1\n"));
    REQUIRE_THAT(r.out, ContainsSubstring("wiener 1\n"));
    REQUIRE_THAT(r.out, ContainsSubstring("spectrum 1.000000 -1.000000"));
    REQUIRE_THAT(r.out, ContainsSubstring("DEE 3.086161\n"));
    REQUIRE_THAT(r.out, ContainsSubstring("DEE_series 3.086161\n"));
    REQUIRE_THAT(r.out, ContainsSubstring("E_D 2.000000\n"));
    REQUIRE_THAT(r.out, ContainsSubstring("n_plus 1\n"));
    REQUIRE(r.err.empty());
}

TEST_CASE("compute JSON output") {
    auto r = run_cli({"compute", "--json"}, p4_edgelist);
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["version"] == "distspec-report/1");
    REQUIRE(j["n"] == 4);
    REQUIRE(j["m"] == 3);
    REQUIRE(j["diameter"] == 3);
    REQUIRE(j["wiener"] == 10);
    REQUIRE(j["spectrum"].size() == 4);
    REQUIRE(j["spectrum"][0].get<double>() == Catch::Approx(5.162278).margin(1e-6));
    REQUIRE(j["dee"].get<double>() == Catch::Approx(175.463938).margin(1e-6));
    REQUIRE(j["dee_series"].get<double>() == Catch::Approx(175.463938).margin(1e-6));
    REQUIRE(j["distance_energy"].get<double>() == Catch::Approx(10.324555).margin(1e-6));
    REQUIRE(j["n_plus"] == 1);
    REQUIRE(j["residual"].get<double>() >= 0.0);
}

TEST_CASE("compute infers format from the extension") {
    auto g6 = temp_file("p4.g6", "Ch\n");
    auto r = run_cli({"compute", g6.string()});
    REQUIRE(r.exit_code == 0);
    REQUIRE_THAT(r.out, ContainsSubstring("n 4\n"));
    REQUIRE_THAT(r.out, ContainsSubstring("m 3\n"));

    auto el = temp_file("p4.txt", p4_edgelist);
    auto r2 = run_cli({"compute", el.string()});
    REQUIRE(r2.exit_code == 0);
    REQUIRE_THAT(r2.out, ContainsSubstring("wiener 10\n"));

    // explicit --format wins over the extension
    auto odd = temp_file("p4_as_edgelist.g6", p4_edgelist);
    auto r3 = run_cli({"compute", "--format", "edgelist", odd.string()});
    REQUIRE(r3.exit_code == 0);
    REQUIRE_THAT(r3.out, ContainsSubstring("n 4\n"));
}

TEST_CASE("bounds table on the 4-vertex path") {
    auto r = run_cli({"bounds"}, p4_edgelist);
    REQUIRE(r.exit_code == 0);
    REQUIRE_THAT(r.out, ContainsSubstring("bound_id"));
    REQUIRE_THAT(r.out, ContainsSubstring("EQ7"));
    REQUIRE_THAT(r.out, ContainsSubstring("175.069"));
    REQUIRE_THAT(r.out, ContainsSubstring("92.028"));
    REQUIRE_THAT(r.out, ContainsSubstring("11.870"));
    REQUIRE_THAT(r.out, ContainsSubstring("5.292"));
    REQUIRE_THAT(r.out, ContainsSubstring("175.464"));
    // 13 bound rows plus the header
    std::size_t lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    REQUIRE(lines == 14);
}

TEST_CASE("bounds JSON output") {
    auto r = run_cli({"bounds", "--json"}, p4_edgelist);
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 13);
    REQUIRE(j[0]["bound_id"] == "EQ4_LOWER");
    REQUIRE(j[4]["bound_id"] == "EQ7");
    REQUIRE(j[4]["bound_value"].get<double>() == Catch::Approx(175.069475).margin(1e-6));
    REQUIRE(j[4]["satisfied"] == true);
    REQUIRE(j[4]["alpha"] == 1.0);
    REQUIRE(j[4]["t"] == 2);
    REQUIRE(j[5]["alpha"].is_null());
}

TEST_CASE("bounds exit code tracks the known-open case") {
    auto r = run_cli({"bounds"}, k3_edgelist);
    REQUIRE(r.exit_code == 0);
    REQUIRE_THAT(r.out, ContainsSubstring("EQ14"));
    REQUIRE_THAT(r.out, ContainsSubstring("-0.400"));

    auto strict = run_cli({"bounds", "--strict"}, k3_edgelist);
    REQUIRE(strict.exit_code == 1);
}

TEST_CASE("bounds writes a machine report next to the table") {
    auto out_csv = std::filesystem::temp_directory_path() / "distspec-cli-tests" / "p4_report.csv";
    std::filesystem::create_directories(out_csv.parent_path());
    auto r = run_cli({"bounds", "--output", out_csv.string()}, p4_edgelist);
    REQUIRE(r.exit_code == 0);
    auto text = read_file(out_csv);
    REQUIRE(text.rfind(report_csv_header(), 0) == 0);
    REQUIRE_THAT(text, ContainsSubstring("EQ7,lower,175.069475"));

    auto out_json = out_csv.parent_path() / "p4_report.json";
    auto r2 = run_cli({"bounds", "--output", out_json.string()}, p4_edgelist);
    REQUIRE(r2.exit_code == 0);
    auto j = nlohmann::json::parse(read_file(out_json));
    REQUIRE(j.size() == 13);
}

TEST_CASE("verify families from the command line") {
    auto r = run_cli({"verify", "--family", "complete", "--n", "2..10"});
    REQUIRE(r.exit_code == 0);
    REQUIRE_THAT(r.out, ContainsSubstring("graphs_tested 9\n"));
    REQUIRE_THAT(r.out, ContainsSubstring("violations 0 (known-open 8)\n"));
    REQUIRE_THAT(r.out, ContainsSubstring("equality_hits 55\n"));
    REQUIRE_THAT(r.out, ContainsSubstring("tightness (relative slack):"));

    auto strict = run_cli({"verify", "--family", "complete", "--n", "2..10", "--strict"});
    REQUIRE(strict.exit_code == 1);
}

TEST_CASE("verify over a random ensemble") {
    auto r = run_cli({"verify", "--family", "gnp", "--n", "8", "--p", "0.3,0.5", "--count", "5",
                      "--seed", "9"});
    REQUIRE(r.exit_code == 0);
    REQUIRE_THAT(r.out, ContainsSubstring("graphs_tested 10\n"));
    REQUIRE_THAT(r.out, ContainsSubstring("generator mt19937_64/splitmix64:v1\n"));
    REQUIRE_THAT(r.out, ContainsSubstring("seed 9\n"));
}

TEST_CASE("verify writes the JSON summary to a file") {
    auto path = std::filesystem::temp_directory_path() / "distspec-cli-tests" / "k3_summary.json";
    std::filesystem::create_directories(path.parent_path());
    auto r = run_cli({"verify", "--family", "complete", "--n", "3", "--output", path.string()});
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(read_file(path));
    REQUIRE(j["version"] == "distspec-report/1");
    REQUIRE(j["violations"][0]["severity"] == "known-open");
}

TEST_CASE("scan prints the tightness table") {
    auto r = run_cli({"scan", "--family", "path", "--n", "4"});
    REQUIRE(r.exit_code == 0);
    std::size_t lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    REQUIRE(lines == 14);
    REQUIRE(r.out.rfind(scan_csv_header(), 0) == 0);
    REQUIRE_THAT(r.out, ContainsSubstring("\nCh,4,3,3,10,EQ4_LOWER,5.291503,175.463938,"));
}

TEST_CASE("scan JSON and file output") {
    auto r = run_cli({"scan", "--family", "path", "--n", "4", "--json"});
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["rows"].size() == 13);

    auto path = std::filesystem::temp_directory_path() / "distspec-cli-tests" / "p4_scan.csv";
    std::filesystem::create_directories(path.parent_path());
    auto direct = run_cli({"scan", "--family", "path", "--n", "4"});
    auto filed = run_cli({"scan", "--family", "path", "--n", "4", "--output", path.string()});
    REQUIRE(filed.exit_code == 0);
    REQUIRE(filed.out.empty());
    REQUIRE(read_file(path) == direct.out);
}

TEST_CASE("scan exit code tracks the known-open case") {
    auto r = run_cli({"scan", "--family", "complete", "--n", "3"});
    REQUIRE(r.exit_code == 0);
    auto strict = run_cli({"scan", "--family", "complete", "--n", "3", "--strict"});
    REQUIRE(strict.exit_code == 1);
}

TEST_CASE("exhaustive subcommand") {
    auto r = run_cli({"exhaustive", "--n", "1..3"});
    REQUIRE(r.exit_code == 0);
    REQUIRE_THAT(r.out, ContainsSubstring("generator exhaustive-labeled:v1\n"));
    REQUIRE_THAT(r.out, ContainsSubstring("graphs_tested 6\n"));
    REQUIRE_THAT(r.out, ContainsSubstring("violation Bw EQ14 slack -0.400 known-open\n"));

    auto strict = run_cli({"exhaustive", "--n", "1..3", "--strict"});
    REQUIRE(strict.exit_code == 1);

    auto json = run_cli({"exhaustive", "--n", "1..3", "--json"});
    REQUIRE(json.exit_code == 0);
    auto j = nlohmann::json::parse(json.out);
    REQUIRE(j["graphs_tested"] == 6);
    REQUIRE(j["violations"].size() == 1);
    REQUIRE(j["violations"][0]["severity"] == "known-open");

    auto threaded = run_cli({"exhaustive", "--n", "4", "--threads", "4", "--json"});
    auto j4 = nlohmann::json::parse(threaded.out);
    REQUIRE(j4["graphs_tested"] == 38);
}

TEST_CASE("usage errors exit with status 2") {
    REQUIRE(run_cli({}).exit_code == 2);
    REQUIRE(run_cli({"fluxcapacitate"}).exit_code == 2);
    REQUIRE(run_cli({"compute", "--bogus"}).exit_code == 2);
    REQUIRE(run_cli({"compute", "--format", "xml"}, k2_edgelist).exit_code == 2);
    REQUIRE(run_cli({"exhaustive"}).exit_code == 2);

    auto missing = run_cli({"compute", "/no/such/file.g6"});
    REQUIRE(missing.exit_code == 2);
    REQUIRE_THAT(missing.err, ContainsSubstring("cannot open input file"));

    auto family = run_cli({"verify", "--n", "4"});
    REQUIRE(family.exit_code == 2);
    REQUIRE_THAT(family.err, ContainsSubstring("missing --family"));

    auto badp = run_cli({"verify", "--family", "gnp", "--n", "8", "--p", "1.5"});
    REQUIRE(badp.exit_code == 2);

    auto named_p = run_cli({"scan", "--family", "path", "--n", "4", "--p", "0.5"});
    REQUIRE(named_p.exit_code == 2);
    REQUIRE_THAT(named_p.err, ContainsSubstring("--p only applies"));

    auto big = run_cli({"exhaustive", "--n", "9"});
    REQUIRE(big.exit_code == 2);
}

TEST_CASE("input errors exit with status 2") {
    auto disconnected = run_cli({"compute"}, "2 0\n");
    REQUIRE(disconnected.exit_code == 2);
    REQUIRE_THAT(disconnected.err, ContainsSubstring("2 components"));

    auto bad_g6 = temp_file("bad.g6", "C\n");
    auto r = run_cli({"compute", bad_g6.string()});
    REQUIRE(r.exit_code == 2);

    auto short_list = run_cli({"bounds"}, "4 3\n0 1\n");
    REQUIRE(short_list.exit_code == 2);
}

TEST_CASE("numerical overflow exits with status 3") {
    auto r = run_cli({"scan", "--family", "path", "--n", "60"});
    REQUIRE(r.exit_code == 3);
    REQUIRE_THAT(r.err, ContainsSubstring("error:"));
}

TEST_CASE("help exits cleanly") {
    auto top = run_cli({"--help"});
    REQUIRE(top.exit_code == 0);
    REQUIRE_THAT(top.out, ContainsSubstring("compute"));

    auto sub = run_cli({"bounds", "--help"});
    REQUIRE(sub.exit_code == 0);
    REQUIRE_THAT(sub.out, ContainsSubstring("--alpha"));
}

TEST_CASE("complete bipartite splits the vertex count") {
    auto scan = run_cli({"scan", "--family", "complete_bipartite", "--n", "5"});
    REQUIRE(scan.exit_code == 0);
    // K_{2,3}: 6 edges, diameter 2, Wiener index 14
    REQUIRE_THAT(scan.out, ContainsSubstring(",5,6,2,14,EQ4_LOWER,"));
}

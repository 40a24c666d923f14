#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::ordered_json;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const char* bin = std::getenv("XPOLY_BIN");
    REQUIRE(bin != nullptr);
    const std::string out_file = "cli_stdout.tmp";
    const std::string cmd =
        std::string("\"") + bin + "\" " + args + " > " + out_file + " 2> cli_stderr.tmp";
    int rc = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream f(out_file);
    std::stringstream ss;
    ss << f.rdbuf();
    r.out = ss.str();
    return r;
}

ordered_json parse(const std::string& s) { return ordered_json::parse(s); }

ordered_json without_timing(ordered_json j) {
    j.erase("timing_ms");
    return j;
}

} // namespace

TEST_CASE("construct rs") {
    auto r = run_cli("construct rs -n 4 -t 2");
    REQUIRE(r.code == 0);
    auto j = parse(r.out);
    CHECK(j["schema_version"] == "1");
    CHECK(j["design"]["family"] == "rs");
    CHECK(j["design"]["det"] == "25");
    CHECK(j["design"]["guaranteed_min_dist"] == 4);
    CHECK_FALSE(j["design"].contains("certified_min_dist"));
}

TEST_CASE("construct with certification") {
    auto r = run_cli("construct sidon -n 3 -t 3 --certify");
    REQUIRE(r.code == 0);
    auto j = parse(r.out);
    CHECK(j["design"]["det"] == "48");
    CHECK(j["design"]["certified_min_dist"] == 6);
    CHECK(j["design"]["rows"][1]["coeffs"] == ordered_json::array({1, 6, 7}));
}

TEST_CASE("construct default t is the family optimum") {
    auto r = run_cli("construct rs -n 2");
    REQUIRE(r.code == 0);
    CHECK(parse(r.out)["inputs"]["t"] == 2);
    // sidon-discrete has no default radius
    CHECK(run_cli("construct sidon-discrete -n 3").code == 2);
}

TEST_CASE("construct bad parameters exit 2") {
    CHECK(run_cli("construct rs -n 4 -t 5").code == 2);
    CHECK(run_cli("construct rs").code == 2);
    CHECK(run_cli("construct negacyclic -n 4 -t 2").code == 2);
    CHECK(run_cli("nonsense").code == 2);
}

TEST_CASE("construct guard overflow exits 3") {
    CHECK(run_cli("construct sidon -n 40 -t 12").code == 3); // q(40)^11 beyond the dlog cap
}

TEST_CASE("construct --exact") {
    auto r = run_cli("construct sidon -n 3 -t 3 --exact");
    REQUIRE(r.code == 0);
    CHECK(parse(r.out)["design"]["density_exact"] == "3/4");
    CHECK(run_cli("construct rs -n 25 -t 2 --exact").code == 2);
}

TEST_CASE("sidon command") {
    auto r = run_cli("sidon -n 3 -h 2");
    REQUIRE(r.code == 0);
    auto j = parse(r.out);
    CHECK(j["set"]["group"] == ordered_json::array({8}));
    CHECK(j["set"]["elements"] ==
          ordered_json::array({ordered_json::array({1}), ordered_json::array({6}),
                               ordered_json::array({7})}));
    CHECK(j["set"]["verified"] == true);
    CHECK(j["set"]["field"]["p"] == 3);
    CHECK(j["set"]["field"]["m"] == 2);

    CHECK(run_cli("sidon -n 3").code == 2);
    CHECK(run_cli("sidon -n 40 -h 11").code == 3);
}

TEST_CASE("verify round-trip and mutation") {
    REQUIRE(run_cli("construct sidon -n 3 -t 3 --certify --out rt_design.tmp.json").code == 0);
    CHECK(run_cli("verify rt_design.tmp.json").code == 0);

    std::ifstream in("rt_design.tmp.json");
    ordered_json j;
    in >> j;
    in.close();
    j["design"]["det"] = "47";
    std::ofstream out("rt_mutated.tmp.json");
    out << j.dump(2);
    out.close();
    CHECK(run_cli("verify rt_mutated.tmp.json").code == 1);

    CHECK(run_cli("verify no_such_file.json").code == 2);
    std::ofstream bad("rt_bad.tmp.json");
    bad << "{ not json";
    bad.close();
    CHECK(run_cli("verify rt_bad.tmp.json").code == 2);
}

TEST_CASE("construct output is deterministic") {
    auto a = run_cli("construct sidon -n 4 -t 2 --certify");
    auto b = run_cli("construct sidon -n 4 -t 2 --certify");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(without_timing(parse(a.out)).dump() == without_timing(parse(b.out)).dump());
}

TEST_CASE("worker count does not change the report") {
    setenv("XPOLY_THREADS", "3", 1);
    auto threaded = run_cli("construct sidon -n 5 -t 3 --certify");
    unsetenv("XPOLY_THREADS");
    auto plain = run_cli("construct sidon -n 5 -t 3 --certify");
    REQUIRE(threaded.code == 0);
    REQUIRE(plain.code == 0);
    CHECK(without_timing(parse(threaded.out)).dump() == without_timing(parse(plain.out)).dump());
}

TEST_CASE("density-table csv") {
    auto r = run_cli("density-table --n-min 2 --n-max 2");
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header ==
          "n,rush_t,rush_log2_density,rush_conforming,rs_t,rs_p,rs_log2_density,"
          "sidon_t,sidon_q,sidon_log2_density,rs_vs_rush_log2,sidon_vs_rush_log2");
    // n=2: rush t=1 log2(9/10), rs t=2 p=3 log2(8/9)
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream rs(row);
    while (std::getline(rs, cell, ','))
        cells.push_back(cell);
    REQUIRE(cells.size() == 12);
    CHECK(cells[0] == "2");
    CHECK(cells[1] == "1");
    CHECK_THAT(std::stod(cells[2]), Catch::Matchers::WithinAbs(std::log2(0.9), 1e-9));
    CHECK(cells[3] == "1");
    CHECK(cells[4] == "2");
    CHECK(cells[5] == "3");
    CHECK_THAT(std::stod(cells[6]), Catch::Matchers::WithinAbs(std::log2(8.0 / 9.0), 1e-9));

    auto again = run_cli("density-table --n-min 2 --n-max 2");
    CHECK(again.out == r.out); // bit-identical

    auto sub = run_cli("density-table --n-min 2 --n-max 3 --families rs");
    REQUIRE(sub.code == 0);
    CHECK(sub.out.substr(0, sub.out.find('\n')) == "n,rs_t,rs_p,rs_log2_density");
}

TEST_CASE("density-table json and guards") {
    auto r = run_cli("density-table --n-min 2 --n-max 4 --format json");
    REQUIRE(r.code == 0);
    auto j = parse(r.out);
    REQUIRE(j["table"].size() == 3);
    CHECK(j["table"][0]["n"] == 2);
    CHECK(j["table"][0]["rs"]["p"] == 3);

    CHECK(run_cli("density-table --n-min 2 --n-max 250000").code == 3);
    CHECK(run_cli("density-table --n-min 5 --n-max 2").code == 2);
    CHECK(run_cli("density-table --n-min 2 --n-max 30 --exact").code == 2);
    CHECK(run_cli("density-table --n-min 2 --n-max 4 --families negacyclic").code == 2);
}

TEST_CASE("density-table exact columns") {
    auto r = run_cli("density-table --n-min 2 --n-max 2 --exact");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("rush_density_exact") != std::string::npos);
    CHECK(r.out.find("9/10") != std::string::npos);
    CHECK(r.out.find("8/9") != std::string::npos);
}

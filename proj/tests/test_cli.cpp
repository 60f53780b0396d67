#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct cli_result {
    int exit_code;
    std::string output;
};

cli_result run_cli(const std::string& args) {
    const std::string cmd = std::string(SHOOTOUT_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

int count_occurrences(const std::string& text, const std::string& needle) {
    int count = 0;
    for (std::size_t pos = 0; (pos = text.find(needle, pos)) != std::string::npos; pos += needle.size())
        ++count;
    return count;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

const std::filesystem::path scratch = [] {
    auto dir = std::filesystem::temp_directory_path() / "shootout_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}();

} // namespace

TEST_CASE("check modes validate against the bundled published values") {
    for (const char* cmd : {"table3 --check", "sweep --check", "empirical --check",
                            "ties --check", "complexity --check", "replay --check",
                            "strategy --check"}) {
        CAPTURE(cmd);
        const auto r = run_cli(cmd);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("[PASS]") != std::string::npos);
        CHECK(r.output.find("[FAIL]") == std::string::npos);
    }
}

TEST_CASE("region --check reports the two documented reference divergences") {
    const auto r = run_cli("region --check");
    CHECK(r.exit_code == 1);
    CHECK(count_occurrences(r.output, "[FAIL]") == 2);
    CHECK(r.output.find("[FAIL] alpha vs alternating") != std::string::npos);
    CHECK(r.output.find("[FAIL] boundary q_min(p=0.75) vs alternating") != std::string::npos);
    CHECK(r.output.find("[PASS] alpha vs catch-up") != std::string::npos);
    CHECK(r.output.find("[PASS] boundary q_min(p=0.75) vs catch-up") != std::string::npos);
    CHECK(r.output.find("[PASS] round trip") != std::string::npos);
}

TEST_CASE("simulate --check stays within three sigma of the exact engine") {
    const auto r = run_cli("simulate --mech catchup --rounds 2 --seed 42 --trials 200000 --check");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[FAIL]") == std::string::npos);
}

TEST_CASE("table3 CSV has one header row and a manifest reference") {
    const auto r = run_cli("table3");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.rfind("# manifest: digest=", 0) == 0);
    CHECK(r.output.find("rounds,catch_up,catch_up_exact,adjusted_catch_up,") != std::string::npos);
    CHECK(count_occurrences(r.output, "\n") == 10);  // comment + header + 8 rows
    CHECK(r.output.find("157/304") != std::string::npos);  // 2-round catch-up, exact
}

TEST_CASE("table3 JSON embeds the manifest") {
    const auto r = run_cli("table3 --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j.contains("manifest"));
    CHECK(j["manifest"]["arithmetic"] == "rational");
    REQUIRE(j["rows"].size() == 8);
    CHECK(j["rows"][1]["catch_up_exact"] == "157/304");
    CHECK(j["rows"][1]["adjusted_catch_up_exact"] == "1355/2736");
}

TEST_CASE("replay prints the induced schedule") {
    const auto r = run_cli("replay --mech adj-catchup --kicks SS.MM.SS.MS.SM.SS.SM");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("6,B,S,S,4,4") != std::string::npos);
    CHECK(r.output.find("7,A,S,M,5,4") != std::string::npos);
    const auto j = nlohmann::json::parse(run_cli("replay --mech adj-catchup "
                                                 "--kicks SS.MM.SS.MS.SM.SS.SM --format json")
                                             .output);
    CHECK(j["decided"] == true);
    CHECK(j["winner"] == "A");
}

TEST_CASE("complexity JSON carries a verified witness") {
    const auto r = run_cli("complexity --mech abba --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["worst_case_depth"] == 1);
    CHECK(j["witness_verified"] == true);
    CHECK(j["witness"]["ask"] == "next_round_even");
}

TEST_CASE("strategy JSON reports violations with compact state strings") {
    const auto r = run_cli("strategy --mech catchup -p 3/4 -q 2/3 --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["strategy_proof"] == true);
    CHECK(j["violations"].empty());
    CHECK(j["p"] == "3/4");
}

TEST_CASE("simulate with a fixed seed reproduces byte-identical files") {
    const auto out1 = scratch / "sim1.json";
    const auto out2 = scratch / "sim2.json";
    const std::string base = "simulate --mech catchup --rounds 5 --seed 7 --trials 50000 --out ";
    REQUIRE(run_cli(base + out1.string()).exit_code == 0);
    REQUIRE(run_cli(base + out2.string()).exit_code == 0);
    const auto text1 = slurp(out1);
    CHECK(text1.find("\"rng\": \"mt19937_64\"") != std::string::npos);
    // The embedded manifests name different output files; splice them out.
    auto j1 = nlohmann::json::parse(text1);
    auto j2 = nlohmann::json::parse(slurp(out2));
    j1.erase("manifest");
    j2.erase("manifest");
    CHECK(j1 == j2);
    CHECK(std::filesystem::exists(out1.string() + ".manifest.json"));
}

TEST_CASE("sweep writes one file per mechanism into the output directory") {
    const auto dir = scratch / "sweeps";
    std::filesystem::remove_all(dir);
    const auto r = run_cli("sweep -p 0.75 --q-min 0.5 --q-max 0.52 --out " + dir.string());
    REQUIRE(r.exit_code == 0);
    for (const char* mech : {"catchup", "adj-catchup", "abba"}) {
        const auto file = dir / ("sweep_" + std::string(mech) + "_p0.75_r5.csv");
        CAPTURE(file.string());
        REQUIRE(std::filesystem::exists(file));
        const auto text = slurp(file);
        CHECK(text.find("q,win_prob_a") != std::string::npos);
        CHECK(count_occurrences(text, "\n") == 5);  // comment + header + 3 points
        CHECK(std::filesystem::exists(file.string() + ".manifest.json"));
    }
}

TEST_CASE("empty sweep range yields an empty curve and exit 0") {
    const auto r = run_cli("sweep --mech catchup -p 0.75 --q-min 0.6 --q-max 0.55");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("q,win_prob_a") != std::string::npos);
}

TEST_CASE("error contract") {
    CHECK(run_cli("table3 --model /nonexistent/model.cfg").exit_code == 2);
    CHECK(run_cli("complexity --mech not-a-rule").exit_code == 1);
    CHECK(run_cli("table3 --model apesteguia2010").exit_code == 2);  // needs uniform
    const auto r = run_cli("--error-json table3 --model /nonexistent/model.cfg");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("\"error\"") != std::string::npos);
    CHECK(run_cli("nonsense-command").exit_code != 0);
}

TEST_CASE("model config files resolve like presets") {
    const auto cfg = scratch / "brams.cfg";
    std::ofstream(cfg) << "mode = uniform\np = 3/4\nq = 2/3\nsudden_death = 3/4:2/3\n";
    const auto r = run_cli("table3 --model " + cfg.string() + " --check");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[FAIL]") == std::string::npos);
}

#include <catch2/catch.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "asymwit/asymwit.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "asymwit_cli_stdout.txt";
    const std::string cmd =
        std::string(ASYMWIT_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(out);
    std::stringstream buf;
    buf << in.rdbuf();
    res.output = buf.str();
    return res;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path tmp(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST_CASE("bounds subcommand reproduces the scalene reference row", "[cli]") {
    const fs::path report = tmp("asymwit_bounds.json");
    const auto res =
        run_cli("bounds --angles 58.4,121.6,180 --out " + report.string());
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.find("bounds.q_mirror") != std::string::npos);
    const json j = json::parse(slurp(report));
    CHECK(std::fabs(j["bounds"]["q_mirror"].get<double>() -
                    (3.0 + 2.0 * std::sqrt(2.0))) < 1e-4);
    CHECK(std::fabs(j["bounds"]["delta"].get<double>() - 0.11107) < 1e-4);
    CHECK(j["bounds"]["converged"].get<bool>());
    CHECK(j["config"]["omegas"].size() == 3);
}

TEST_CASE("cosine input matches angle input", "[cli]") {
    const fs::path ra = tmp("asymwit_a.json"), rc = tmp("asymwit_c.json");
    REQUIRE(run_cli("bounds --angles 130,130,100 --out " + ra.string()).exit_code == 0);
    const double c12 = std::cos(130.0 * asymwit::kPi / 180.0);
    const double c23 = std::cos(100.0 * asymwit::kPi / 180.0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "bounds --cosines %.17g,%.17g,%.17g --out %s",
                  c12, c12, c23, rc.string().c_str());
    REQUIRE(run_cli(buf).exit_code == 0);
    const json a = json::parse(slurp(ra)), c = json::parse(slurp(rc));
    CHECK(a["bounds"]["q_mirror"] == c["bounds"]["q_mirror"]);
    CHECK(a["bounds"]["delta"] == c["bounds"]["delta"]);
}

TEST_CASE("reports are byte-identical across reruns", "[cli]") {
    const fs::path r1 = tmp("asymwit_rep1.json"), r2 = tmp("asymwit_rep2.json");
    const std::string args = "simulate --angles 54,112,194 --shots 2048 --seed 42 ";
    const auto a = run_cli(args + "--out " + r1.string());
    const auto b = run_cli(args + "--out " + r2.string());
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(slurp(r1) == slurp(r2));
    CHECK(!slurp(r1).empty());
}

TEST_CASE("invalid targets and flags exit with code 1", "[cli]") {
    CHECK(run_cli("bounds --angles 0,50,50").exit_code == 1);
    CHECK(run_cli("bounds").exit_code == 1);
    CHECK(run_cli("bounds --angles 10,20").exit_code == 1);
    CHECK(run_cli("nonsense").exit_code == 1);
    CHECK(run_cli("certify --angles 54,112,194 --observed 5.9").exit_code == 1);
    CHECK(run_cli("certify --angles 54,112,194 --expectations /no/such/file")
              .exit_code == 1);
    CHECK(run_cli("certify --angles 54,112,194 --observed 5.9 --observed-sigma "
                  "0.01 --expectations /tmp/x")
              .exit_code == 1);
}

TEST_CASE("an exhausted iteration budget exits with code 2", "[cli]") {
    const auto res = run_cli("bounds --angles 58.4,121.6,180 --max-iterations 1");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("did not converge") != std::string::npos);
}

TEST_CASE("certify with scalar observations reproduces the published verdicts",
          "[cli]") {
    const fs::path report = tmp("asymwit_verdict.json");
    const auto res = run_cli(
        "certify --angles 58.4,121.6,180 --observed 5.8894 --observed-sigma "
        "0.0145 --sigma-k 1 --out " +
        report.string());
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(slurp(report));
    CHECK(j["verdict"]["certified"].get<bool>());
    CHECK(std::fabs(j["verdict"]["significance"].get<double>() - 4.2) < 0.3);
    CHECK(res.output.find("verdict.result = asymmetry_certified") != std::string::npos);

    const auto neg = run_cli(
        "certify --angles 60,200,100 --observed 5.7877 --observed-sigma 0.0113 "
        "--sigma-k 1");
    REQUIRE(neg.exit_code == 0);
    CHECK(neg.output.find("verdict.result = not_certified") != std::string::npos);
}

TEST_CASE("certify accepts an external expectation table", "[cli]") {
    using namespace asymwit;
    const auto target = target_from_angles_deg(58.4, 121.6, 180.0);
    const auto spec = build_witness(target);
    auto table = exact_expectations(scenario_from_targets(target));
    // blank out unused cells to exercise the nan path
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y)
            if (spec.w[x][y] == 0.0)
                table[x][y] = std::numeric_limits<double>::quiet_NaN();
    const fs::path tbl = tmp("asymwit_table.txt");
    {
        std::ofstream out(tbl);
        out << "# exact expectations of the saturating scenario\n";
        write_expectation_table(out, table);
    }
    const fs::path report = tmp("asymwit_certify_table.json");
    const auto res = run_cli("certify --angles 58.4,121.6,180 --expectations " +
                             tbl.string() + " --out " + report.string());
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(slurp(report));
    CHECK(std::fabs(j["verdict"]["i6_observed"].get<double>() - q_max(spec)) < 1e-9);
    CHECK(j["verdict"]["certified"].get<bool>());
}

TEST_CASE("table1 regression passes on a clean build", "[cli]") {
    const auto res = run_cli("table1");
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.find("table1.result = pass") != std::string::npos);
    CHECK(res.output.find("MISMATCH") == std::string::npos);
}

TEST_CASE("gap subcommand is deterministic and reports its budget", "[cli][slow]") {
    const fs::path g1 = tmp("asymwit_gap1.json"), g2 = tmp("asymwit_gap2.json");
    const std::string args = "gap --starts 2 --restarts 8 --seed 7 ";
    const auto a = run_cli(args + "--out " + g1.string());
    const auto b = run_cli(args + "--out " + g2.string());
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(slurp(g1) == slurp(g2));
    const json j = json::parse(slurp(g1));
    CHECK(j["best"]["delta"].get<double>() >= 0.110);
}

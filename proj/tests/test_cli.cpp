#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kmrich/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = kmr::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("kmrich_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("classify") {
    auto r = invoke({"classify", "-c", "a=1,3,3,1; p=2,2,2"});
    CHECK(r.code == 0);
    CHECK(r.out == "AA; plan: all-must-fail [{2,4,5,7}]\n");

    r = invoke({"classify", "-c", "a=1,1,1,1; p=3,3,3"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "ADD; plan: any-must-fail [S1={2,5,7,8}"));

    r = invoke({"classify", "-c", R"({"k":4,"a":[3,1,1,1],"p":[2,2,2]})", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["label"] == "AB");

    r = invoke({"classify", "-c", "a=1,1; p=3"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "UNCLASSIFIED"));
}

TEST_CASE("input errors exit with the usage code") {
    CHECK(invoke({"classify", "-c", "a=1,0,1,1; p=2,2,2"}).code == 2);
    CHECK(invoke({"classify", "-c", "a=1,x; p=1"}).code == 2);
    CHECK(invoke({"classify", "-c", "a=2,3,1,1; p=2,9,9"}).code == 2);
    CHECK(invoke({"classify", "-c", "a=5,1,1,1; p=1,1,1"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"verify", "-k", "4", "-r", "BA"}).code == 2);
    CHECK(invoke({"classify"}).code == 2);
    const auto bad = invoke({"classify", "-c", "a=1,0,1,1; p=2,2,2"});
    CHECK(contains(bad.err, "non-positive"));
}

TEST_CASE("simulate") {
    auto r = invoke({"simulate", "-c", "a=1,3,3,1; p=2,2,2", "-s", "2,4,5,7"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "38/3"));
    CHECK(contains(r.out, "converged after 2 assignments"));

    r = invoke({"simulate", "-c", "a=1,3,3,1; p=2,2,2", "-s", "2,4,5,7", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["outcome"]["tag"] == "converged");

    r = invoke({"simulate", "-c", "a=1,2; p=1", "-s", "1,3"});
    CHECK(r.code == 2);
    CHECK(contains(r.err, "tie"));

    r = invoke({"simulate", "-c", "a=1,2; p=1", "-s", "1,3", "--tie", "branch"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "branch 2 of 2"));

    CHECK(invoke({"simulate", "-c", "a=1,1; p=8", "-s", "1,9"}).code == 2);
}

TEST_CASE("probability") {
    auto r = invoke({"probability", "-c", "a=1,1,1,1; p=3,3,3"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "18/29"));
    CHECK(contains(r.out, "69/70"));
    CHECK(contains(r.out, "violates"));

    r = invoke({"probability", "-c", "a=1,1; p=10"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "no theorem claim"));
}

TEST_CASE("verify writes byte-identical reports for a fixed seed") {
    const fs::path dir = scratch_dir("verify");
    const auto a = invoke({"verify", "-k", "4", "-n", "3", "--seed", "17", "-B", "20", "-o", (dir / "a.json").string()});
    const auto b = invoke({"verify", "-k", "4", "-n", "3", "--seed", "17", "-B", "20", "-j", "2", "-o",
                           (dir / "b.json").string()});
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    const std::string ja = slurp(dir / "a.json");
    CHECK_FALSE(ja.empty());
    CHECK(ja == slurp(dir / "b.json"));
    const auto report = nlohmann::json::parse(ja);
    CHECK(report["rng_seed"] == 17);
    CHECK(report["regions"].size() == 13);

    const auto csv = invoke({"verify", "-k", "5", "-r", "BA,BE", "-n", "2", "--seed", "3", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(contains(csv.out, "region,k,samples"));
    CHECK(contains(csv.out, "\nBE,5,2,"));
    fs::remove_all(dir);
}

TEST_CASE("verify honours the output directory variable") {
    const fs::path dir = scratch_dir("env");
    ::setenv(kmr::cli::kOutputDirEnv, dir.c_str(), 1);
    const auto r = invoke({"verify", "-k", "2", "-n", "2", "--seed", "1"});
    ::unsetenv(kmr::cli::kOutputDirEnv);
    CHECK(r.code == 1);  // every k = 2 sample reaches the pairing from every seeding
    CHECK(contains(r.out, "no theorem claim at k=2"));
    CHECK(fs::exists(dir / "report.json"));
    fs::remove_all(dir);
}

TEST_CASE("certify and check") {
    const fs::path dir = scratch_dir("certify");
    const fs::path cert = dir / "add.json";
    auto r = invoke({"certify", "-c", "a=1,1,1,1; p=3,3,3", "-o", cert.string()});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "PlanHolds"));

    r = invoke({"certify", "--check", cert.string()});
    CHECK(r.code == 0);
    CHECK(r.out == "certificate OK\n");

    auto j = nlohmann::json::parse(slurp(cert));
    j["candidates"][2]["reached_target"] = true;
    std::ofstream(dir / "bad.json") << j.dump(2);
    r = invoke({"certify", "--check", (dir / "bad.json").string()});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "problem:"));

    std::ofstream(dir / "garbage.json") << "{ not json";
    CHECK(invoke({"certify", "--check", (dir / "garbage.json").string()}).code == 2);

    const auto a = invoke({"certify", "-c", "a=1,1,1,1; p=3,3,3"});
    const auto b = invoke({"certify", "-c", "a=1,1,1,1; p=3,3,3"});
    CHECK(a.out == b.out);
    CHECK(a.out == slurp(cert));
    fs::remove_all(dir);
}

TEST_CASE("config files") {
    const fs::path dir = scratch_dir("file");
    std::ofstream(dir / "c.txt") << "a=3,4,1,1; p=1,9,9\n";
    const auto r = invoke({"classify", "-f", (dir / "c.txt").string()});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "ACB"));
    CHECK(invoke({"classify", "-f", (dir / "missing.txt").string()}).code == 2);
    fs::remove_all(dir);
}

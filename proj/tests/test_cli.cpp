// End-to-end checks of the command-line driver: exit codes, cache reuse,
// and the shape of its JSON output. The binary path comes in through the
// QMREL_CLI_PATH compile definition.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

namespace {

struct RunResult {
    int status = -1;
    std::string output;
};

// Runs a shell command, capturing stdout and stderr together.
RunResult run(const std::string& command) {
    RunResult res;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, n);
    int raw = pclose(pipe);
    res.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return res;
}

std::string cli() { return std::string(QMREL_CLI_PATH); }

// A scratch directory per process so cache files cannot leak between runs.
const std::filesystem::path& workdir() {
    static std::filesystem::path dir = [] {
        std::filesystem::path d = std::filesystem::temp_directory_path() /
                                  ("qmrel_cli_" + std::to_string(getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string in_workdir(const std::string& command) {
    return "cd " + workdir().string() + " && " + cli() + " " + command;
}

}  // namespace

TEST_CASE("gb writes a cache and recognizes it on rerun") {
    RunResult first = run(in_workdir("gb"));
    CHECK(first.status == 0);
    CHECK(first.output.find("reduced basis: 16 elements") != std::string::npos);
    CHECK(std::filesystem::exists(workdir() / "basis.gb"));

    RunResult second = run(in_workdir("gb"));
    CHECK(second.status == 0);
    CHECK(second.output.find("up to date") != std::string::npos);

    // Asking for the other order recomputes rather than trusting the cache.
    RunResult lex = run(in_workdir("gb --order lex --out lexbasis.gb"));
    CHECK(lex.status == 0);
    CHECK(lex.output.find("(lex)") != std::string::npos);
}

TEST_CASE("verify runs stages against the cache and reports in JSON") {
    run(in_workdir("gb"));

    RunResult arch2 = run(in_workdir("verify arch2 --json"));
    CHECK(arch2.status == 0);
    nlohmann::json j = nlohmann::json::parse(arch2.output);
    CHECK(j.at("stage") == "arch2");
    REQUIRE(j.at("claims").size() == 2);
    CHECK(j.at("claims")[0].at("constraint") == "a11 - a22");
    CHECK(j.at("claims")[0].at("implied") == true);
    CHECK(j.at("claims")[1].at("constraint") == "t1");
    CHECK(j.at("remainder_terms") == 22);

    RunResult shapes = run(in_workdir("verify shapes --json"));
    CHECK(shapes.status == 0);
    nlohmann::json arr = nlohmann::json::parse(shapes.output);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 2);
    CHECK(arr[0].at("stage") == "shapes");
    CHECK(arr[1].at("stage") == "delta");
    for (const auto& rep : arr)
        for (const auto& c : rep.at("claims")) CHECK(c.at("implied") == true);
}

TEST_CASE("verify demands a basis cache for reduction stages") {
    std::filesystem::path bare = workdir() / "no_cache_here";
    std::filesystem::create_directories(bare);
    RunResult res = run("cd " + bare.string() + " && " + cli() + " verify ord1");
    CHECK(res.status == 1);
    CHECK(res.output.find("run `qmrel gb` first") != std::string::npos);

    // shapes has no reduction step and runs without one.
    RunResult shapes = run("cd " + bare.string() + " && " + cli() + " verify shapes");
    CHECK(shapes.status == 0);
}

TEST_CASE("usage errors and bad arguments exit with code 1") {
    CHECK(run(in_workdir("verify bogus_stage")).status == 1);
    CHECK(run(in_workdir("quat find-mu --q 5")).status == 1);
    CHECK(run(in_workdir("quat find-mu --q 5 --delta 6 --lambda i --alpha 1,0,zz,0")).status ==
          1);
    CHECK(run(cli() + " nonsense").status == 1);
}

TEST_CASE("an exhausted budget exits with code 3") {
    run(in_workdir("gb"));
    RunResult res = run("cd " + workdir().string() + " && QMREL_BUDGET=5 " + cli() +
                        " verify ord1");
    CHECK(res.status == 3);
    CHECK(res.output.find("budget exhausted") != std::string::npos);
}

TEST_CASE("quat subcommands print their constructions") {
    RunResult q = run(in_workdir("quat find-q --delta 6"));
    CHECK(q.status == 0);
    CHECK(q.output.find("q = 5") != std::string::npos);

    RunResult mu = run(in_workdir("quat find-mu --q 5 --delta 6 --lambda i --alpha 1,0,0,0"));
    CHECK(mu.status == 0);
    CHECK(mu.output.find("mu = i + j + k") != std::string::npos);
    CHECK(mu.output.find("mu^2 = -19") != std::string::npos);

    RunResult mu_json =
        run(in_workdir("quat find-mu --q 5 --delta 6 --lambda i --alpha 1,0,0,0 --json"));
    CHECK(mu_json.status == 0);
    nlohmann::json j = nlohmann::json::parse(mu_json.output);
    CHECK(j.at("mu") == "i + j + k");
    CHECK(j.at("mu_squared") == "-19");

    RunResult unram = run(in_workdir("quat check-unramified --p 5 --q 5 --delta 6"));
    CHECK(unram.status == 0);
    CHECK(unram.output.find("true") != std::string::npos);
}

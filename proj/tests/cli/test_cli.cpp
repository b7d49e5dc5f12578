// End-to-end checks of the mdz binary: spawns the real executable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

struct RunOut {
    int exit_code;
    std::string out;
};

RunOut run(const std::string& args) {
    std::string cmd = std::string(MDZ_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("eval: Gaussian f_2 via the CLI, json output") {
    auto r = run("eval --field d=-1 --cones \"1,0;0,1\" --exp \"2;2\" --A 400");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(std::abs(std::stod(j["value_re"].get<std::string>()) - 0.42437977621184684) < 1e-6);
    CHECK(std::stod(j["value_im"].get<std::string>()) == 0.0);
    CHECK(j["converged"].get<bool>());
    CHECK(j["spec"]["field"] == "d=-1");
    // stable schema: fixed sorted key set
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"converged", "heuristic_tail", "spec", "tail_bound", "terms_used",
                                           "value_im", "value_re"});
}

TEST_CASE("eval: divergent spec exits 2, parse error exits 1") {
    CHECK(run("eval --field Q --cones \"1,0\" --exp \"1\"").exit_code == 2);
    // completed but short of tol: distinct from a refusal
    CHECK(run("eval --field d=-1 --cones \"1,0;0,1\" --exp \"2;2\" --A 64 --tol 1e-14").exit_code == 3);
    CHECK(run("eval --field Q --cones \"banana\" --exp \"2\"").exit_code == 1);
    CHECK(run("eval --field d=12 --cones \"1,0\" --exp \"2\"").exit_code == 1);
}

TEST_CASE("eval: the double Gaussian spec from the docs") {
    auto r = run("eval --field d=-1 --cones \"1,0;0,1|1,0;0,1\" --exp \"1,2;1,2\" --A 256 --tol 1e-6");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(std::abs(std::stod(j["value_re"].get<std::string>()) - 0.06487054) < 1e-5);
}

TEST_CASE("cone report") {
    auto r = run("cone --field d=-1 --gens \"1,0;0,2\"");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK_FALSE(j["unimodular"].get<bool>());
    CHECK(j["simple_operative"].get<bool>());

    auto r2 = run("cone --field d=2 --gens \"1,0;3,2\"");
    json j2 = json::parse(r2.out);
    CHECK(j2["simple_operative"].get<bool>());
    CHECK(j2["epsilon"].get<int>() == 1);

    auto r3 = run("cone --field d=-1 --gens \"1,1;1,-1\"");
    json j3 = json::parse(r3.out);
    CHECK(j3["simple_operative"].get<bool>());
    CHECK_FALSE(j3["simple_strict"].get<bool>());
}

TEST_CASE("field and decompose reports") {
    json f = json::parse(run("field --field d=2").out);
    CHECK(f["fundamental_unit"] == "1,1");
    CHECK(f["totally_positive_unit"] == "3,2");
    CHECK(f["discriminant"].get<long long>() == 8);

    json d = json::parse(run("decompose --field d=-1").out);
    CHECK(d["cones"].size() == 2);
    json d2 = json::parse(run("decompose --field d=2").out);
    CHECK(d2["cones"].size() == 4);
    for (const auto& c : d2["cones"]) CHECK(c["sign"].get<int>() == 1);
}

TEST_CASE("quadrature mode cross-checks the sum") {
    auto r = run("eval --field Q --cones \"1,0\" --exp \"2\" --mode quadrature --tol 1e-4");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(std::abs(std::stod(j["value_re"].get<std::string>()) - 1.6449340668482264) < 1e-8);
    CHECK(run("eval --field Q --cones \"1,0\" --exp \"2\" --mode bogus").exit_code == 1);
}

TEST_CASE("csv and text output") {
    auto r = run("eval --field Q --cones \"1,0\" --exp \"2\" --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("spec_id,value_re,value_im,tail_bound,terms,seconds", 0) == 0);
    auto t = run("eval --field Q --cones \"1,0\" --exp \"2\" --format text");
    CHECK(t.out.find("value") != std::string::npos);
    CHECK(t.out.find("1.64493406684") != std::string::npos);
}

TEST_CASE("config file with flag override") {
    const char* path = "/tmp/mdz_cli_cfg.ini";
    {
        std::ofstream out(path);
        out << "field=d=-1\ncones=1,0;0,1\nexp=2;2\nA=200\nformat=json\n";
    }
    json j = json::parse(run(std::string("eval --config ") + path).out);
    CHECK(j["spec"]["A"].get<long long>() == 200);
    json j2 = json::parse(run(std::string("eval --config ") + path + " --A 300").out);
    CHECK(j2["spec"]["A"].get<long long>() == 300);
}

TEST_CASE("identical output across worker thread counts") {
    std::string base = "eval --field d=-1 --cones \"1,0;0,1\" --exp \"2;2\" --A 600 --threads ";
    std::string one = run(base + "1").out;
    CHECK(one == run(base + "2").out);
    CHECK(one == run(base + "8").out);
    // the MDZ_THREADS default must not change values either
    std::string env = run("eval --field d=-1 --cones \"1,0;0,1\" --exp \"2;2\" --A 600").out;
    setenv("MDZ_THREADS", "4", 1);
    std::string env4 = run("eval --field d=-1 --cones \"1,0;0,1\" --exp \"2;2\" --A 600").out;
    unsetenv("MDZ_THREADS");
    CHECK(env == env4);
}

TEST_CASE("verify subcommand: quick partition suite") {
    auto r = run("verify partition --quick");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(run("verify bogus").exit_code != 0);
}

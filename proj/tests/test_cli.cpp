#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef QFHE_CLI_PATH
#define QFHE_CLI_PATH "./qfhe"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string out_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                           "/qfhe_cli_out.txt";
    std::string cmd = std::string(QFHE_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream is(out_path, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("compile emits the three lowering stages") {
    std::string dir = "/tmp/qfhe_cli_compile";
    RunResult r = run_cli("compile --builtin t1 --out " + dir + " --emit dot");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("pipes 273") != std::string::npos);
    CHECK(!slurp(dir + "/ma.json").empty());
    CHECK(!slurp(dir + "/bp_state.json").empty());
    CHECK(!slurp(dir + "/bp_bit.json").empty());
    CHECK(!slurp(dir + "/gh.json").empty());
    std::string dot = slurp(dir + "/bp_state.dot");
    CHECK(dot.rfind("digraph", 0) == 0);
    long depth = 0;
    for (char c : dot) {
        if (c == '{') ++depth;
        if (c == '}') --depth;
    }
    CHECK(depth == 0);
    std::string ghdot = slurp(dir + "/gh.dot");
    CHECK(ghdot.rfind("graph", 0) == 0);
}

TEST_CASE("malformed input exits with code 2") {
    std::string bad = "/tmp/qfhe_cli_bad.json";
    {
        std::ofstream os(bad);
        os << "{ not json";
    }
    RunResult r = run_cli("compile --input " + bad);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("line") != std::string::npos);

    RunResult missing = run_cli("compile --input /tmp/qfhe_no_such_file.json");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("water mode reports the worked trace") {
    RunResult r = run_cli("run --mode water");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("exit state 9, output 1") != std::string::npos);
}

TEST_CASE("randomized modes demand a seed and reproduce bytes") {
    RunResult no_seed = run_cli("run --mode qfhe-demo");
    CHECK(no_seed.exit_code == 2);

    RunResult a = run_cli("run --mode qfhe-demo --seed 1");
    RunResult b = run_cli("run --mode qfhe-demo --seed 1");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("fidelity") != std::string::npos);

    RunResult chain = run_cli("run --mode chain --seed 5");
    CHECK(chain.exit_code == 0);
    CHECK(chain.output.find("fidelity vs corrected target 1") != std::string::npos);

    RunResult dense = run_cli("run --mode dense --seed 3");
    CHECK(dense.exit_code == 0);
}

TEST_CASE("estimate prints tables, audits and formulas") {
    RunResult tables = run_cli("estimate --tables");
    CHECK(tables.exit_code == 0);
    CHECK(tables.output.find("PASS") != std::string::npos);
    CHECK(tables.output.find("FLAG") != std::string::npos);
    CHECK(tables.output.find("factor 2^15") != std::string::npos);

    RunResult e = run_cli("estimate --scheme modsum --n 512 --q 65536 --format json");
    CHECK(e.exit_code == 0);
    CHECK(e.output.find("\"epr_pairs\": 131072") != std::string::npos);
    CHECK(e.output.find("executable_pipes") != std::string::npos);

    RunResult bad = run_cli("estimate --scheme frodo");
    CHECK(bad.exit_code == 2);
}

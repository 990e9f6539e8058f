#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include <json.hpp>

#include "drl/common.hpp"

// Drives the installed binary: exit codes, JSON report schema, determinism.

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(DRL_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("exit codes: 0 pass, 2 usage, 3 domain, 4 failed check") {
    CHECK(run_cli("verify glaisher --k 3").exit_code == 0);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("eval zeta --field quad:7777").exit_code == 3);  // not squarefree
    CHECK(run_cli("eval zeta --field quad:-1 --s 1").exit_code == 3);  // pole
    // an honest check failure: eta with an absurd tolerance demand
    CHECK(run_cli("verify eta --z 0.25+1.5i --tol 1e-14").exit_code == 4);
}

TEST_CASE("eval targets print value and error estimate") {
    auto r = run_cli("eval sigma --field quad:-1 --ell 1 --n 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("value = 3") != std::string::npos);
    auto steen = run_cli("eval steen --z 1 --params 0,0");
    CHECK(steen.exit_code == 0);
    CHECK(steen.out.find("0.2277877") != std::string::npos);  // 2 K0(2)
    auto zeta = run_cli("eval zeta --field quad:-1 --s 2");
    CHECK(zeta.exit_code == 0);
    CHECK(zeta.out.find("1.50670300992") != std::string::npos);
}

TEST_CASE("verify prints machine-readable reports that round-trip") {
    auto r = run_cli("--output json verify main --field quad:5 --k 1 --z 0.4+1.3i");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("pass").get<bool>());
    CHECK(j.at("id").get<std::string>() == "main");
    // round trip: parse(serialize(x)) == x
    auto j2 = nlohmann::json::parse(j.dump());
    CHECK(j2 == j);
    CHECK(j2.at("lhs")[0].get<double>() == j.at("lhs")[0].get<double>());
}

TEST_CASE("table ideal_counts matches the convolution oracle") {
    auto r = run_cli("table ideal_counts --field quad:-1 --range 1..20");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("n,a_F", 0) == 0);
    // a_F(1..10) = 1,1,0,1,2,0,0,1,1,2
    CHECK(r.out.find("1,1\n") != std::string::npos);
    CHECK(r.out.find("3,0\n") != std::string::npos);
    CHECK(r.out.find("5,2\n") != std::string::npos);
    CHECK(r.out.find("10,2\n") != std::string::npos);
}

TEST_CASE("suite JSONL output is parseable and parallelism-invariant") {
    auto a = run_cli("--output json suite --filter klingen_siegel --parallelism 1");
    auto b = run_cli("--output json suite --filter klingen_siegel --parallelism 8");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);  // byte-identical reports
    // one JSON object per line, summary object last
    size_t lines = 0;
    std::istringstream is(a.out);
    std::string line, last;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        ++lines;
        auto j = nlohmann::json::parse(line);  // throws on malformed output
        last = line;
    }
    CHECK(lines == 5);  // 4 instances + summary
    auto summary = nlohmann::json::parse(last);
    CHECK(summary.at("summary").get<bool>());
    CHECK(summary.at("pass").get<long>() == 4);
}

TEST_CASE("DRL_DEFAULT_TOL environment override") {
    // absurdly tight default tolerance makes a passing check fail
    std::string cmd = "DRL_DEFAULT_TOL=1e-14 " + std::string(DRL_CLI_PATH) +
                      " verify eta --z 0.25+1.5i >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 4);
}

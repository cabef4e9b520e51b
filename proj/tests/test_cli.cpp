#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    Run r;
    const std::string cmd = std::string(CONEKIT_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run("verify plt --d 5 --q 3").code == 0);
    CHECK(run("verify fano --q 1 --format md").code == 0);
    CHECK(run("").code == 2);
    CHECK(run("bogus").code == 2);
    CHECK(run("verify plt --d 5").code == 2);
    CHECK(run("verify plt --d 5 --q 1").code == 2);
    CHECK(run("verify plt --d 6 --q 4").code == 2);
    CHECK(run("sweep --d-min 2 --d-max 4").code == 2);
    CHECK(run("km-surface --d 2").code == 2);
    CHECK(run("km-surface --d 5 --format xml").code == 2);
    CHECK(run("cohom --d 5 --q1 3 --q2 1 --subtract E_5").code == 2);
    CHECK(run("cohom --d 5 --q1 3 --q2 1 --n 1 --subtract 2E_5").code == 2);
    CHECK(run("contract --d 5").code == 2);
    CHECK(run("contract --d 5 --pullback Gamma").code == 2);
    CHECK(run("cone --d 6 --q 4").code == 2);
    CHECK(run("kvv-schedule --e 1,x --delta 0,0 --target 1").code == 2);
    CHECK(run("kvv-schedule --e 1 --delta 1 --target 1").code == 2);
}

TEST_CASE("json output carries the report schema") {
    const Run r = run("verify plt --d 5 --q 3");
    CHECK(r.out.find("\"scenario\": \"plt-nonnormal\"") != std::string::npos);
    CHECK(r.out.find("\"verdict\": \"non_normal=true\"") != std::string::npos);
    CHECK(r.out.find("\"value\": \"1/2\"") != std::string::npos);
}

TEST_CASE("format flag works before and after the subcommand") {
    CHECK(run("--format csv cone --d 5 --q 3 --ledger picard").out == run("cone --d 5 --q 3 --ledger picard --format csv").out);
    CHECK(run("cone --d 5 --q 3 --ledger picard --format csv").out ==
          "rho_S,rho_T,rho_X,rho_Y,rho_Z,consistent\n12,1,13,2,1,true\n");
}

TEST_CASE("contract reports pullback coefficients as fractions") {
    const Run r = run("contract --d 5 --pullback E_1^T --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.find("Gamma,1/6") != std::string::npos);
    CHECK(r.out.find("l_1,1/2") != std::string::npos);
}

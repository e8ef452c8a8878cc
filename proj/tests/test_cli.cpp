#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(GFREG_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

nlohmann::json parse(const RunResult& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("frame check passes on the default grid") {
    const auto r = run_cli("frame check");
    REQUIRE(r.exit_code == 0);
    const auto doc = parse(r);
    REQUIRE(doc.at("pass").get<bool>());
    REQUIRE(doc.at("worst_moment_defect").get<double>() < 1e-8);
    REQUIRE(doc.at("identity_residual_max").get<double>() < 1e-6);
}

TEST_CASE("bad grid parameters exit with a usage error") {
    REQUIRE(run_cli("--grid-n 100 frame check").exit_code == 2);
    REQUIRE(run_cli("--definitely-not-a-flag 3 frame check").exit_code == 2);
}

TEST_CASE("unresolvable grids exit with a numeric error") {
    REQUIRE(run_cli("--grid-n 512 frame check").exit_code == 3);
}

TEST_CASE("analyze emits a full report for a named input") {
    const auto r = run_cli("analyze --spec delta");
    REQUIRE(r.exit_code == 0);
    const auto doc = parse(r);
    REQUIRE(doc.contains("calibration"));
    REQUIRE(doc.contains("fine_scale_exponent"));
    REQUIRE(doc.contains("fourier_decay"));
    REQUIRE(doc.contains("quasiasymptotic"));
    REQUIRE(doc.contains("smoothness"));
    REQUIRE(doc.at("smoothness").at("smooth").get<bool>() == false);
    REQUIRE(doc.at("calibration").at("inferred_class").at("k").get<int>() == 0);
}

TEST_CASE("malformed spec strings exit with a usage error") {
    REQUIRE(run_cli("analyze --spec 'delta:m='").exit_code == 2);
    REQUIRE(run_cli("analyze --spec no_such_object").exit_code == 2);
}

TEST_CASE("zygmund reports both memberships for a cusp at its exponent") {
    const auto r = run_cli("zygmund --spec cusp:tau=0.5 --r 0.5");
    REQUIRE(r.exit_code == 0);
    const auto doc = parse(r);
    REQUIRE(doc.at("zygmund_membership").at("member").get<bool>());
    REQUIRE(doc.at("hoelder_membership").at("member").get<bool>());
}

TEST_CASE("smooth-test accepts a smooth input") {
    const auto r = run_cli("smooth-test --spec gaussian");
    REQUIRE(r.exit_code == 0);
    REQUIRE(parse(r).at("verdict").at("smooth").get<bool>());
}

TEST_CASE("verify subcommand runs a filtered row") {
    const auto r = run_cli("verify --filter frame.scale_guard");
    REQUIRE(r.exit_code == 0);
    const auto doc = parse(r);
    REQUIRE(doc.at("summary").at("all_pass").get<bool>());
    REQUIRE(doc.at("summary").at("total").get<int>() >= 1);
}

TEST_CASE("verify output is deterministic byte for byte") {
    const auto a = run_cli("verify --filter tauberian.quasi_delta");
    const auto b = run_cli("verify --filter tauberian.quasi_delta");
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.out == b.out);
    REQUIRE(a.out.size() > 0);
}

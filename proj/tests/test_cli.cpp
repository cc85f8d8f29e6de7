// Process-level tests of the mrdkit binary: exit codes, file outputs and the
// byte-stability of canonical reports. The binary path arrives in MRDKIT_BIN.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "mrdkit/json_io.hpp"

using namespace mrdkit;

namespace {

std::string bin() {
    const char* b = std::getenv("MRDKIT_BIN");
    REQUIRE_MESSAGE(b != nullptr, "MRDKIT_BIN must point at the CLI binary");
    return b;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    const std::string out_path = "cli_test_stdout.tmp";
    const std::string cmd = env_prefix + bin() + " " + args + " > " + out_path + " 2>&1";
    const int raw = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove(out_path.c_str());
    const int code = raw < 0 ? raw : WEXITSTATUS(raw);
    return {code, ss.str()};
}

json load(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

}  // namespace

TEST_CASE("construct, dual, distance, is-mrd, is-selfdual") {
    auto r = run("construct --q 3 --n 2 --ell 1 --out cli_code.json");
    CHECK(r.exit_code == 0);
    LoadedCode lc = code_from_json(load("cli_code.json"));
    CHECK(lc.code.dim() == 2);

    CHECK(run("dual --in cli_code.json --out cli_dual.json").exit_code == 0);
    CHECK(run("dual --in cli_dual.json --out cli_dual2.json").exit_code == 0);
    LoadedCode round = code_from_json(load("cli_dual2.json"));
    CHECK(round.code == lc.code);

    auto d = run("distance --in cli_code.json --format json");
    CHECK(d.exit_code == 0);
    CHECK(json::parse(d.out)["min_distance"] == 2);

    auto m = run("is-mrd --in cli_code.json --format json");
    CHECK(m.exit_code == 0);
    CHECK(json::parse(m.out)["is_mrd"] == true);

    auto s = run("is-selfdual --in cli_code.json --format json");
    CHECK(s.exit_code == 0);
    CHECK(json::parse(s.out)["is_self_dual"] == false);

    std::remove("cli_code.json");
    std::remove("cli_dual.json");
    std::remove("cli_dual2.json");
}

TEST_CASE("resource caps map to exit 3") {
    CHECK(run("construct --q 3 --n 4 --ell 2 --out cli_big.json").exit_code == 0);
    CHECK(run("distance --in cli_big.json --max-work 100").exit_code == 3);
    CHECK(run("is-mrd --in cli_big.json --max-work 100").exit_code == 3);
    // the environment variable mirrors --max-work
    auto r = run("distance --in cli_big.json", "MRDKIT_MAX_WORK=100 ");
    CHECK(r.exit_code == 3);
    std::remove("cli_big.json");
}

TEST_CASE("structure dump and prime-power fields") {
    auto r = run("construct --q 3 --n 2 --structure --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["T"]["entries"] == json::parse("[[0,1],[1,0]]"));
    CHECK(j["S"]["entries"] == json::parse("[[1,1],[2,1]]"));

    auto q4 = run("construct --q 4 --n 2 --ell 1 --format json");
    CHECK(q4.exit_code == 0);
    CHECK(json::parse(q4.out)["dimension"] == 2);
}

TEST_CASE("lemma selection") {
    auto r = run("verify-theorems --q 3 --n 2 --lemma dual-sandwich --canonical --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j["checks"].size() == 1);
    CHECK(j["checks"][0]["name"] == "dual-sandwich");
    CHECK(j["checks"][0]["status"] == "pass");
    CHECK(run("verify-theorems --q 3 --n 2 --lemma no-such-check").exit_code == 2);
}

TEST_CASE("selfdualize exit codes and certificate verification") {
    auto ok = run("selfdualize --q 3 --n 2 --emit-certificate cli_cert.json");
    CHECK(ok.exit_code == 0);
    auto vc = run("verify-certificate --in cli_cert.json");
    CHECK(vc.exit_code == 0);

    // the certificate's code section is itself a valid code file
    std::ofstream("cli_sd_code.json") << load("cli_cert.json")["code"].dump();
    auto sd = run("is-selfdual --in cli_sd_code.json --format json");
    CHECK(sd.exit_code == 0);
    CHECK(json::parse(sd.out)["is_self_dual"] == true);
    auto mrd = run("is-mrd --in cli_sd_code.json --format json");
    CHECK(json::parse(mrd.out)["is_mrd"] == true);
    std::remove("cli_sd_code.json");

    // tamper: certificates with edited factors must be rejected
    json cert = load("cli_cert.json");
    cert["P"]["entries"][0][0] = (cert["P"]["entries"][0][0].get<u64>() + 1) % 3;
    std::ofstream("cli_cert_bad.json") << cert.dump();
    CHECK(run("verify-certificate --in cli_cert_bad.json").exit_code == 2);

    CHECK(run("selfdualize --q 3 --n 4").exit_code == 1);
    CHECK(run("selfdualize --q 5 --n 2").exit_code == 1);
    CHECK(run("selfdualize --q 2 --n 2").exit_code == 1);
    CHECK(run("selfdualize --q 3 --n 3").exit_code == 1);

    std::remove("cli_cert.json");
    std::remove("cli_cert_bad.json");
}

TEST_CASE("classify2x2 and automorphisms") {
    auto c3 = run("classify2x2 --q 3 --format json");
    CHECK(c3.exit_code == 0);
    CHECK(json::parse(c3.out)["count"] == 8);
    auto c5 = run("classify2x2 --q 5 --format json");
    CHECK(c5.exit_code == 0);
    CHECK(json::parse(c5.out)["count"] == 0);

    auto a = run("automorphisms --q 3 --n 2 --ell 1 --exhaustive --format json");
    CHECK(a.exit_code == 0);
    json ja = json::parse(a.out);
    CHECK(ja["order"] == 128);
    CHECK(ja["exhaustive_count"] == 128);
}

TEST_CASE("verify-theorems reports and canonical stability") {
    auto r1 = run("verify-theorems --q 3 --n 2 --canonical");
    auto r2 = run("verify-theorems --q 3 --n 2 --canonical");
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(r1.out.find("FAIL") == std::string::npos);

    auto r3 = run("verify-theorems --q 2 --n 2 --canonical --format json");
    CHECK(r3.exit_code == 0);
    json j = json::parse(r3.out);
    CHECK(j["failed"] == 0);
}

TEST_CASE("usage and data errors map to exit 2") {
    CHECK(run("construct --q 6 --n 2").exit_code == 2);       // not a prime power
    CHECK(run("distance --in does_not_exist.json").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);                  // unknown subcommand
    CHECK(run("construct").exit_code == 2);                   // missing required options
}

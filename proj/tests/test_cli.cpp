#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

using namespace std::string_literals;

namespace {

const std::string kCli = HFT_CLI_PATH;
const std::string kFixtures = HFT_FIXTURE_DIR;

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = kCli + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("intersect prints rational strings") {
    auto r = run("intersect 1 1");
    CHECK(r.code == 0);
    CHECK(r.out == "1/24\n");
    CHECK(run("intersect 2 4").out == "1/1152\n");
    CHECK(run("intersect 0 2 0 0").out == "0\n");
}

TEST_CASE("check-axioms exit codes") {
    CHECK(run("check-axioms " + kFixtures + "/point.json").code == 0);
    CHECK(run("check-axioms " + kFixtures + "/block6.json").code == 0);
    CHECK(run("check-axioms " + kFixtures + "/negative/neg_assoc.json").code == 1);
    CHECK(run("check-axioms " + kFixtures + "/negative/neg_q_parity.json").code == 3);
    CHECK(run("check-axioms /nonexistent/file.json").code == 3);
    CHECK(run("no-such-subcommand").code == 2);
}

TEST_CASE("correlator subcommand") {
    auto r = run("correlator " + kFixtures + "/point.json --genus 1 --ins 1:0");
    CHECK(r.code == 0);
    CHECK(r.out == "1/24\n");
}

TEST_CASE("verify subcommands succeed on fixtures") {
    CHECK(run("verify string " + kFixtures + "/frobenius3.json --max-n 3 --max-genus 1 --max-psi 2").code == 0);
    CHECK(run("verify dilaton " + kFixtures + "/point.json --max-n 3 --max-genus 1 --max-psi 2").code == 0);
    CHECK(run("verify main-lemma " + kFixtures + "/block6.json --max-n 3 --max-genus 1 --max-psi 1").code == 0);
}

TEST_CASE("verify-relation on fixtures") {
    CHECK(run("verify-relation " + kFixtures + "/relations/wdvv-0-4.json " + kFixtures + "/frobenius3.json").code == 0);
    CHECK(run("verify-relation " + kFixtures + "/relations/trr-1-1.json " + kFixtures + "/block6.json").code == 0);
}

TEST_CASE("eliminate prints terms and evaluates both routes") {
    auto r = run("eliminate " + kFixtures + "/strata/boundary-0-4.json --evaluate " + kFixtures +
                 "/block6.json --json");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"difference\": \"0\"") != std::string::npos);
}

TEST_CASE("json output is byte-identical across runs") {
    for (const std::string& cmd :
         {"intersect 2 2 3 --json"s,
          "check-axioms " + kFixtures + "/block6.json --json",
          "potential " + kFixtures + "/frobenius3.json --max-n 3 --max-psi 1 --max-genus 1 --json",
          "correlator " + kFixtures + "/block6.json --genus 0 --ins 0:2,0:5,0:1,0:1 --json --dump-graphs",
          "verify-relation " + kFixtures + "/relations/wdvv-0-4.json " + kFixtures + "/grassmann2.json --json",
          "search-algebra --layout dim6-minimal --budget 50 --json"s}) {
        auto r1 = run(cmd);
        auto r2 = run(cmd);
        CHECK(r1.code == r2.code);
        CHECK(r1.out == r2.out);
        CHECK(!r1.out.empty());
    }
}

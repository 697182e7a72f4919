#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(RELCELL_BIN) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
    return s;
}

}  // namespace

TEST_CASE("cartan csv") {
    auto r = run("cartan usl2:p=3 --format csv");
    CHECK(r.code == 0);
    CHECK(trim(r.out) == "2,2,0\n2,2,0\n0,0,1");
}

TEST_CASE("verify") {
    CHECK(run("verify zigzag:cycS:3").code == 0);
    auto r = run("verify annular:n=1 --format json");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("axioms"));
}

TEST_CASE("mult") {
    auto r = run("mult annular:n=1 \"1-2|v^|1-2\" \"1-2|v^|1-2\"");
    CHECK(r.code == 0);
    CHECK(trim(r.out) == "1-2|v^|1-2");
    CHECK(trim(run("mult annular:n=1 \"1-2|^v|1-2\" \"1-2|^v|1-2\"").out) == "0");
    CHECK(trim(run("mult zigzag:A:3 \"(1|2)\" \"(2|1)\"").out) == "(1|2|1)");
}

TEST_CASE("other subcommands run") {
    for (auto args : {"build zigzag:A:3", "decomp annular:n=1", "gram usl2:p=3 --label 1", "simples usl2:p=3",
                      "core zigzag:cycS:3 0", "frobenius annular:n=1", "cartan zigzag:A:3 --format json"})
        CHECK_MESSAGE(run(args).code == 0, args);
}

TEST_CASE("usage and spec errors exit with 2") {
    CHECK(run("").code == 2);
    CHECK(run("cartan").code == 2);
    CHECK(run("bogus zigzag:A:3").code == 2);
    CHECK(run("cartan zigzag:A:2").code == 2);
    CHECK(run("cartan usl2:p=2").code == 2);
    CHECK(run("cartan annular:n=2 --max-dim 10").code == 2);
    CHECK(run("cartan zigzag:A:3 --format xml").code == 2);
    CHECK(run("mult annular:n=1 \"1-2|vv|1-2\" \"1-2|v^|1-2\"").code == 2);
}

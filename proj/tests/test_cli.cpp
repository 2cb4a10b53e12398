#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "revpell/json_io.hpp"

using revpell::Json;

namespace {

struct CmdResult {
    int status = -1;
    std::string out;
};

const char* cli_path() {
    const char* p = std::getenv("REVPELL_CLI");
    REQUIRE_MESSAGE(p != nullptr, "REVPELL_CLI must point at the binary");
    return p;
}

CmdResult run(const std::string& args) {
    CmdResult r;
    std::string cmd = std::string(cli_path()) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int rc = pclose(p);
    if (WIFEXITED(rc)) r.status = WEXITSTATUS(rc);
    return r;
}

Json parse(const CmdResult& r) {
    REQUIRE(!r.out.empty());
    return Json::parse(r.out);
}

} // namespace

TEST_CASE("analyze: envelope shape and content") {
    auto r = run("--json analyze 2 1 1 1");
    CHECK(r.status == 0);
    Json doc = parse(r);
    CHECK(doc["schema_version"] == "1");
    CHECK(doc["command"] == "analyze");
    CHECK(doc["input"]["matrix"] == Json::parse(R"([["2","1"],["1","1"]])"));
    CHECK(doc["input"]["depth"] == 10);
    CHECK(doc["result"]["hyperbolicity"]["det"] == "1");
    CHECK(doc["result"]["hyperbolicity"]["orientation"] == "preserving");
    CHECK(doc["result"]["case1"]["status"] == "found");
    CHECK(doc["result"]["case1"]["gamma_plus"] == "-1");
    CHECK(doc["result"]["case3"]["problem"]["D"] == "5");
    CHECK(doc["result"]["case3"]["problem"]["N"] == "4");
    CHECK(doc["result"]["reversors_found"].size() == 126);
    // the known general-family reversor appears
    Json instance = Json::parse(R"([["5","3"],["-8","-5"]])");
    bool found = false;
    for (const auto& m : doc["result"]["reversors_found"]) found = found || m == instance;
    CHECK(found);
    CHECK(doc["warnings"].is_array());
    CHECK(!doc["warnings"].empty());
}

TEST_CASE("analyze: depth flag changes the unfolding") {
    auto r0 = run("--json analyze 2 1 1 1 --depth 0");
    auto r3 = run("--json analyze 2 1 1 1 --depth 3");
    CHECK(parse(r0)["result"]["reversors_found"].size() <
          parse(r3)["result"]["reversors_found"].size());
    CHECK(parse(r0)["input"]["depth"] == 0);
}

TEST_CASE("analyze: orientation-reversing input gets the obstruction trace") {
    auto r = run("--json analyze 2 3 1 1");
    CHECK(r.status == 0);
    Json doc = parse(r);
    CHECK(doc["result"]["hyperbolicity"]["orientation"] == "reversing");
    CHECK(doc["result"]["obstruction"]["valid"] == true);
    CHECK(doc["result"]["obstruction"]["conic"] == "ellipse");
    CHECK(doc["result"]["reversors_found"].empty());
    CHECK(doc["result"]["case1"].is_null());
}

TEST_CASE("analyze: non-hyperbolic and non-unimodular inputs exit 3") {
    CHECK(run("analyze 1 0 0 1").status == 3);
    CHECK(run("analyze 1 1 0 1").status == 3);
    CHECK(run("analyze 1 2 3 4").status == 3);
    auto r = run("--json analyze 1 0 0 1");
    CHECK(r.status == 3);
    Json doc = parse(r);
    CHECK(doc["error"]["kind"] == "not_hyperbolic");
}

TEST_CASE("analyze: malformed invocations exit 2") {
    CHECK(run("analyze 1 2 3").status == 2);
    CHECK(run("analyze 1 2 3 x").status == 2);
    CHECK(run("analyze").status == 2);
    CHECK(run("bogus 1 2 3 4").status == 2);
    CHECK(run("").status == 2); // a subcommand is required
}

TEST_CASE("pell: solves and exposes the oracle comparison") {
    auto r = run("--json pell 5 4 --ymax 50");
    CHECK(r.status == 0);
    Json doc = parse(r);
    CHECK(doc["command"] == "pell");
    CHECK(doc["result"]["solution_set"]["kind"] == "infinite_classes");
    CHECK(doc["result"]["solution_set"]["automorph"] == Json::parse(R"(["9","4"])"));
    CHECK(doc["result"]["agreement"] == true);
    CHECK(doc["result"]["expanded"] == doc["result"]["brute_force"]);
    CHECK(doc["result"]["expanded"].size() > 4);

    r = run("--json pell 0 64");
    doc = parse(r);
    CHECK(doc["result"]["solution_set"]["kind"] == "degenerate_lines");
    CHECK(doc["result"]["solution_set"]["lines"].size() == 2);

    r = run("--json pell -3 36");
    doc = parse(r);
    CHECK(doc["result"]["solution_set"]["kind"] == "finite_list");
    CHECK(doc["result"]["solution_set"]["solutions"].size() == 6);

    CHECK(run("pell 5").status == 2);
    CHECK(run("pell 5 x").status == 2);
}

TEST_CASE("construct: recipes, verification block, and exit codes") {
    auto r = run("--json construct general 2 1");
    CHECK(r.status == 0);
    Json doc = parse(r);
    CHECK(doc["result"]["anosov"] == Json::parse(R"([["2","1"],["3","2"]])"));
    CHECK(doc["result"]["involution"] == Json::parse(R"([["2","1"],["-3","-2"]])"));
    CHECK(doc["result"]["verification"]["is_involution"] == true);
    CHECK(doc["result"]["verification"]["is_r_reversible"] == true);
    CHECK(doc["result"]["verification"]["hyperbolicity"]["hyperbolic"] == true);

    r = run("--json construct lower+ 0");
    CHECK(r.status == 0);
    CHECK(parse(r)["result"]["anosov"] == Json::parse(R"([["3","4"],["2","3"]])"));

    r = run("--json construct general 2 1 --choice 1");
    CHECK(r.status == 0);
    CHECK(parse(r)["result"]["anosov"] == Json::parse(R"([["2","-1"],["-3","2"]])"));

    // invalid specs are usage errors
    CHECK(run("construct general 2 5").status == 2);
    CHECK(run("construct general 1 1").status == 2);
    CHECK(run("construct general 2").status == 2);
    CHECK(run("construct lower+ 1 2").status == 2);
    CHECK(run("construct lower+ 3 --choice 1").status == 2);
    CHECK(run("construct diagonal 3").status == 2);
    CHECK(run("construct").status == 2);
}

TEST_CASE("fixset: curves with exact rational offsets") {
    auto r = run("--json fixset 1 0 4 -1");
    CHECK(r.status == 0);
    Json doc = parse(r);
    CHECK(doc["result"]["count"] == 2);
    CHECK(doc["result"]["curves"].size() == 2);
    CHECK(doc["result"]["curves"][0]["direction"] == Json::parse(R"(["1","2"])"));
    CHECK(doc["result"]["curves"][1]["offset"][1] == "1/2");
    CHECK(doc["result"]["family"]["family"] == "lower_triangular_plus");

    CHECK(run("fixset 1 0 0 1").status == 3);  // trivial involution
    CHECK(run("fixset 2 1 1 1").status == 3);  // not an involution
    CHECK(run("fixset 1 0 4").status == 2);
}

TEST_CASE("enumerate: counts under the entry bound") {
    auto r = run("--json enumerate --bound 1");
    CHECK(r.status == 0);
    Json doc = parse(r);
    CHECK(doc["result"]["count"] == 12);
    CHECK(doc["result"]["involutions"].size() == 12);

    r = run("--json enumerate --bound 3");
    CHECK(parse(r)["result"]["count"] == 36);

    CHECK(run("enumerate --bound x").status == 2);
}

TEST_CASE("table: both worked examples match") {
    auto r = run("--json table example1");
    CHECK(r.status == 0);
    Json doc = parse(r);
    CHECK(doc["result"]["match"] == true);
    CHECK(doc["result"]["rows"].size() == 3);
    for (const auto& row : doc["result"]["rows"]) CHECK(row["match"] == true);

    r = run("--json table example2");
    CHECK(r.status == 0);
    doc = parse(r);
    CHECK(doc["result"]["match"] == true);
    CHECK(doc["result"]["rows"].size() == 3);

    CHECK(run("table example9").status == 2);
}

TEST_CASE("json output is byte-stable across runs") {
    auto a = run("--json analyze 2 1 1 1");
    auto b = run("--json analyze 2 1 1 1");
    CHECK(a.out == b.out);
    auto c = run("--json table example1");
    auto d = run("--json table example1");
    CHECK(c.out == d.out);
}

TEST_CASE("human-readable mode prints text, not JSON") {
    auto r = run("analyze 2 1 1 1");
    CHECK(r.status == 0);
    CHECK(r.out.find("reversors found:") != std::string::npos);
    CHECK(r.out.find("\"schema_version\"") == std::string::npos);
    r = run("table example1");
    CHECK(r.status == 0);
    CHECK(r.out.find("MATCH") != std::string::npos);
    r = run("--help");
    CHECK(r.status == 0);
}

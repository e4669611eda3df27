#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QFCODES_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {};
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_spec(const std::string& name, const json& j) {
    const std::string path = "cli_spec_" + name + ".json";
    std::ofstream(path) << j.dump(2) << "\n";
    return path;
}

const std::string& spec_rank4() {
    static const std::string p = write_spec(
        "rank4", json{{"e", 1},
                      {"m", 4},
                      {"monomials", json::array({{{"i", 0}, {"j", 1}, {"lambda", "w"}}})},
                      {"a", "1"}});
    return p;
}

const std::string& spec_deg_plus() {
    static const std::string p = write_spec(
        "deg_plus", json{{"e", 1},
                         {"m", 4},
                         {"monomials", json::array({{{"i", 0}, {"j", 1}, {"lambda", "1"}}})}});
    return p;
}

}  // namespace

TEST_CASE("classify emits the classification and echoes the spec") {
    const RunResult r = run_cli("classify --spec " + spec_rank4() + " --no-timing");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["classification"]["rank"] == 4);
    CHECK(doc["classification"]["standard"] == "I");
    CHECK(doc["classification"]["degenerate"] == false);
    CHECK(doc["spec"]["q"] == 2);
    CHECK(doc["spec"]["modulus"] == json::array({1, 1, 0, 0, 1}));
    CHECK(doc["spec"]["a"] == 1);
    CHECK(!doc.contains("timing_ms"));
    const RunResult timed = run_cli("classify --spec " + spec_rank4());
    CHECK(json::parse(timed.out).contains("timing_ms"));
}

TEST_CASE("hierarchy: both routes agree on the reference form") {
    const RunResult r = run_cli("hierarchy --spec " + spec_rank4() + " --no-timing");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    const json expect = json::array({2, 3, 5, 6});
    CHECK(doc["hierarchy"]["formula"] == expect);
    CHECK(doc["hierarchy"]["brute"] == expect);
    CHECK(doc["mismatches"].empty());
    CHECK(doc["code"]["n"] == 6);
    CHECK(doc["code"]["k"] == 4);
    CHECK(doc["code"]["full_rank"] == true);
    CHECK(!doc.contains("witnesses"));
}

TEST_CASE("hierarchy --witnesses emits one maximizer per r") {
    const RunResult r =
        run_cli("hierarchy --spec " + spec_rank4() + " --witnesses --no-timing");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc.contains("witnesses"));
    REQUIRE(doc["witnesses"].size() == 4);
    for (const auto& w : doc["witnesses"]) {
        CHECK(w["dim"] == 4 - w["r"].get<int>());
        for (const auto& row : w["rows"]) CHECK(row.size() == 4);
    }
}

TEST_CASE("hierarchy --audit-typos surfaces the published variant") {
    const RunResult r =
        run_cli("hierarchy --spec " + spec_deg_plus() + " --audit-typos --no-timing");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["hierarchy"]["formula"] == json::array({6, 9, 11, 12}));
    REQUIRE(doc.contains("audit"));
    CHECK(doc["audit"]["differs"] == true);
    CHECK(doc["audit"]["values"] == json::array({3, 6, 8, 9}));
}

TEST_CASE("hierarchy with a = 0 requires a search route") {
    const std::string p = write_spec(
        "a0", json{{"e", 1},
                   {"m", 4},
                   {"monomials", json::array({{{"i", 0}, {"j", 1}, {"lambda", "w"}}})},
                   {"a", "0"}});
    CHECK(run_cli("hierarchy --spec " + p + " --method formula --no-timing").exit_code == 2);
    const RunResult r = run_cli("hierarchy --spec " + p + " --method brute --no-timing");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(!doc["hierarchy"].contains("formula"));
    CHECK(doc["hierarchy"]["brute"].size() == 4);
    CHECK(doc["code"]["n"] == 10);
}

TEST_CASE("hierarchy routes around an inapplicable closed form") {
    const std::string p = write_spec(
        "rank1", json{{"e", 1},
                      {"m", 4},
                      {"monomials", json::array({{{"i", 1}, {"j", 1}, {"lambda", "1"}}})}});
    const RunResult r = run_cli("hierarchy --spec " + p + " --no-timing");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["classification"]["rank"] == 1);
    CHECK(!doc["hierarchy"].contains("formula"));
    CHECK(doc["hierarchy"]["brute"] == json::array({4, 6, 7, 8}));
    bool noted = false;
    for (const auto& note : doc["notes"])
        noted = noted || note.get<std::string>().find("closed form not applicable") !=
                             std::string::npos;
    CHECK(noted);
}

TEST_CASE("hierarchy falls back to the direct search for low-rank sets") {
    const std::string p = write_spec(
        "lowrank",
        json{{"e", 1},
             {"m", 3},
             {"monomials", json::array({{{"i", 0}, {"j", 0}, {"lambda", "1"}},
                                        {{"i", 0}, {"j", 1}, {"lambda", json::array({1, 1})}}})}});
    const RunResult r = run_cli("hierarchy --spec " + p + " --no-timing");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["code"]["full_rank"] == false);
    CHECK(doc["code"]["k"] == 2);
    CHECK(!doc["hierarchy"].contains("formula"));
    CHECK(!doc["hierarchy"].contains("brute"));
    CHECK(doc["hierarchy"]["direct"].size() == 2);
}

TEST_CASE("zero forms exit 2 from classify and hierarchy") {
    const std::string p = write_spec(
        "zero", json{{"e", 1},
                     {"m", 2},
                     {"monomials", json::array({{{"i", 0}, {"j", 1}, {"lambda", "1"}}})}});
    const RunResult c = run_cli("classify --spec " + p + " --no-timing");
    CHECK(c.exit_code == 2);
    CHECK(json::parse(c.out)["classification"]["rank"] == 0);  // doc still emitted
    const RunResult h = run_cli("hierarchy --spec " + p + " --no-timing");
    CHECK(h.exit_code == 2);
    CHECK(json::parse(h.out).contains("error"));
}

TEST_CASE("spec parse failures exit 2") {
    CHECK(run_cli("hierarchy --spec does_not_exist.json").exit_code == 2);
    const std::string bad = write_spec("badfield", json{{"e", 1}, {"m", 9}});
    CHECK(run_cli("classify --spec " + bad).exit_code == 2);
    const std::string zerolam = write_spec(
        "zerolam", json{{"e", 1},
                        {"m", 4},
                        {"monomials", json::array({{{"i", 0}, {"j", 1}, {"lambda", "0"}}})}});
    CHECK(run_cli("classify --spec " + zerolam).exit_code == 2);
    std::ofstream("cli_spec_notjson.json") << "not json at all\n";
    CHECK(run_cli("classify --spec cli_spec_notjson.json").exit_code == 2);
}

TEST_CASE("search capacity aborts with exit 3") {
    const RunResult r =
        run_cli("hierarchy --spec " + spec_rank4() + " --max-subspaces 5 --no-timing");
    CHECK(r.exit_code == 3);
}

TEST_CASE("argument errors exit 2, help exits 0") {
    CHECK(run_cli("").exit_code == 2);               // a subcommand is required
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("hierarchy").exit_code == 2);      // --spec is required
    CHECK(run_cli("sweep --m 4 --format yaml").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("output is byte-identical across runs and thread counts") {
    const std::string base = "hierarchy --spec " + spec_rank4() + " --no-timing";
    const RunResult a = run_cli(base);
    const RunResult b = run_cli(base);
    CHECK(a.out == b.out);
    const RunResult serial = run_cli(base + " --threads 1");
    const RunResult wide = run_cli(base + " --threads 4");
    CHECK(serial.out == wide.out);
    CHECK(a.out == serial.out);
    // witnesses included: still deterministic
    const RunResult wa = run_cli(base + " --witnesses --threads 1");
    const RunResult wb = run_cli(base + " --witnesses --threads 4");
    CHECK(wa.out == wb.out);
}

TEST_CASE("an explicit modulus matching the default changes nothing") {
    const std::string p = write_spec(
        "modulus", json{{"e", 1},
                        {"m", 4},
                        {"modulus", json::array({1, 1, 0, 0, 1})},
                        {"monomials", json::array({{{"i", 0}, {"j", 1}, {"lambda", "w"}}})},
                        {"a", "1"}});
    const RunResult a = run_cli("hierarchy --spec " + p + " --no-timing");
    const RunResult b = run_cli("hierarchy --spec " + spec_rank4() + " --no-timing");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("csv hierarchy output keeps the pinned column contract") {
    const RunResult r =
        run_cli("hierarchy --spec " + spec_rank4() + " --format csv --no-timing");
    CHECK(r.exit_code == 0);
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : r.out) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "r,d_formula,d_brute,match");
    CHECK(lines[1] == "1,2,2,yes");
    CHECK(lines[2] == "2,3,3,yes");
    CHECK(lines[3] == "3,5,5,yes");
    CHECK(lines[4] == "4,6,6,yes");
}

TEST_CASE("table output renders without a machine contract") {
    const RunResult r =
        run_cli("hierarchy --spec " + spec_rank4() + " --format table --no-timing");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("classification") != std::string::npos);
    CHECK(r.out.find("formula") != std::string::npos);
    CHECK(r.out.find("full rank") != std::string::npos);
}

TEST_CASE("examples subcommand passes end to end") {
    const RunResult r = run_cli("examples --format json --no-timing");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["passed"] == 6);
    CHECK(doc["failed"] == 0);
    REQUIRE(doc["cases"].size() == 6);
    for (const auto& c : doc["cases"]) CHECK(c["pass"] == true);
    const RunResult csv = run_cli("examples --format csv --no-timing");
    CHECK(csv.out.rfind("name,m,family,lambda_log,rank,standard,pass\n", 0) == 0);
}

TEST_CASE("sweep over two variables reports the vanishing coefficient") {
    const RunResult r = run_cli("sweep --m 2 --no-timing");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["forms"] == 3);
    CHECK(doc["zero_forms"] == 1);
    CHECK(doc["all_verified"] == true);
    REQUIRE(doc["families"].size() == 1);
    CHECK(doc["families"][0]["exponent"] == 1);
}

TEST_CASE("sweep over four variables with two families") {
    const RunResult r = run_cli("sweep --m 4 --i 1 --i 2 --no-timing");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["forms"] == 30);
    CHECK(doc["zero_forms"] == 3);
    CHECK(doc["all_verified"] == true);
    const RunResult csv = run_cli("sweep --m 2 --format csv --no-timing");
    CHECK(csv.out.rfind("family,rank,standard,count,n,k,verified\n", 0) == 0);
}

TEST_CASE("sweep rejects an unreachable field or target") {
    CHECK(run_cli("sweep --e 2 --m 4").exit_code == 2);  // no default degree-8 modulus
    CHECK(run_cli("sweep --m 4 --a w").exit_code == 2);  // w is not in the base field
}

#include <sys/wait.h>

#include <cstdio>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "symplectic/fixtures.hpp"
#include "symplectic/report_json.hpp"

using namespace symplectic;
using Json = nlohmann::json;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run cli(const std::string& args) {
    const std::string cmd = std::string(SYMPLECTIC_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    const int st = pclose(f);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

Json cli_json(const std::string& args, int want_status = 0) {
    const auto r = cli(args);
    EXPECT_EQ(r.status, want_status) << args << "\n" << r.out;
    return Json::parse(r.out);
}

}  // namespace

TEST(Cli, CompareTableRowA) {
    const auto j = cli_json("compare --curve1 2116a1 --curve2 10580a1 -p 7");
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["command"], "compare");
    EXPECT_EQ(j["result"]["consensus"], "anti-symplectic");
    const auto& used = j["result"]["criterion_primes"];
    ASSERT_EQ(used.size(), 2u);
    EXPECT_EQ(used[0]["prime"], 2);
    EXPECT_EQ(used[1]["prime"], 23);
    for (const auto& pv : j["result"]["primes"])
        for (const char* key : {"prime", "criterion", "r", "t", "outcome", "reason"}) EXPECT_TRUE(pv.contains(key));
}

TEST(Cli, CurveArgumentsAcceptJsonArrays) {
    const auto E = load_fixtures().at("2116a1");
    const auto Ep = load_fixtures().at("10580a1");
    const std::string a = "'" + Json::array({E.a1.get_si(), E.a2.get_si(), E.a3.get_si(), E.a4.get_si(), E.a6.get_si()}).dump() + "'";
    const std::string b = "'" + Json::array({Ep.a1.get_si(), Ep.a2.get_si(), Ep.a3.get_si(), Ep.a4.get_si(), Ep.a6.get_si()}).dump() + "'";
    const auto j = cli_json("compare --curve1 " + a + " --curve2 " + b + " -p 7");
    EXPECT_EQ(j["result"]["consensus"], "anti-symplectic");
}

TEST(Cli, Hilbert) {
    EXPECT_EQ(cli_json("hilbert -- -4")["result"]["polynomial"], "x - 1728");
    const auto j = cli_json("hilbert -- -12");
    EXPECT_EQ(j["result"]["degree"], 2);
    EXPECT_EQ(j["result"]["polynomial"], "x^2 - 54000*x");
    const auto t = cli("--format text hilbert -- -19");
    EXPECT_EQ(t.status, 0);
    EXPECT_NE(t.out.find("x + 884736"), std::string::npos);
}

TEST(Cli, Frobenius) {
    const auto j = cli_json("frobenius --curve 864a1 -l 5 -p 19");
    EXPECT_EQ(j["result"]["matrix"], Json::parse("[[9,0],[1,9]]"));
    EXPECT_EQ(j["result"]["a"], -1);
    EXPECT_EQ(j["result"]["order_condition"], true);
}

TEST(Cli, FreyScan) {
    const auto j = cli_json("frey-scan 19 864a1 5");
    EXPECT_EQ(j["result"]["verdict"], "eliminated");
    EXPECT_EQ(j["result"]["matches"].size(), 4u);
    EXPECT_EQ(j["result"]["cells"], 40);
}

TEST(Cli, OracleAndExistence) {
    const auto o = cli_json("oracle --curve1 864a1 --curve2 864a1 -l 5 -p 19");
    EXPECT_EQ(o["result"]["types"], "symplectic");
    const auto e = cli_json("exists --gens '[[[2,1],[0,2]]]' -p 7");
    EXPECT_EQ(e["result"]["exists"], true);
    const auto n = cli_json("exists --gens '[[[2,0],[0,1]]]' -p 5");
    EXPECT_EQ(n["result"]["exists"], false);
}

TEST(Cli, ErrorsUseTheEnvelope) {
    const auto h = cli_json("hyper 29", 1);
    EXPECT_EQ(h["error"]["code"], "hypothesis-failed");
    EXPECT_FALSE(h.contains("result"));
    const auto c = cli_json("invariants --curve '[0,0,0,0,0]'", 1);
    EXPECT_EQ(c["error"]["code"], std::string(error_code_name(ErrorCode::SingularModel)));
    const auto u = cli_json("compare --curve1 nosuchcurve --curve2 52a1 -p 7", 1);
    EXPECT_TRUE(u.contains("error"));
    EXPECT_EQ(cli("compare --curve1 52a1").status, 1);  // missing required options
    EXPECT_EQ(cli("--help").status, 0);
}

TEST(Cli, OutputIsDeterministic) {
    for (const std::string args : {"compare --curve1 12696e1 --curve2 12696f1 -p 11", "frey-scan 43 864b1 13",
                                   "classify --curve 648a1 -l 2", "hyper 37"}) {
        const auto a = cli(args), b = cli(args), c = cli("--jobs 3 " + args);
        EXPECT_EQ(a.out, b.out) << args;
        EXPECT_EQ(a.out, c.out) << args;
        EXPECT_FALSE(a.out.empty());
    }
}

TEST(Cli, TextModeLayout) {
    const auto t = cli("--format text compare --curve1 52a2 --curve2 988b1 -p 13");
    EXPECT_EQ(t.status, 0);
    for (const char* col : {"reduction", "prime", "criterion", "r", "t", "outcome", "reason"})
        EXPECT_NE(t.out.find(col), std::string::npos) << col;
    EXPECT_NE(t.out.find("consensus: symplectic"), std::string::npos);
}

// Library JSON views.

TEST(ReportJson, ValuationsAndIntegers) {
    EXPECT_EQ(symplectic::json::valuation(kInfinity), "inf");
    EXPECT_EQ(symplectic::json::valuation(3), 3);
    EXPECT_EQ(symplectic::json::integer(Integer("-123456789012345678901234567890")), "-123456789012345678901234567890");
    const auto env = symplectic::json::error_envelope("x", ErrorCode::NoValidH, "m");
    EXPECT_EQ(env["error"]["code"], std::string(error_code_name(ErrorCode::NoValidH)));
}

TEST(ReportJson, ErrorCodesAreDistinct) {
    std::set<std::string> names;
    for (int c = 0; c <= static_cast<int>(ErrorCode::InvalidArgument); ++c) {
        const std::string name(error_code_name(static_cast<ErrorCode>(c)));
        EXPECT_FALSE(name.empty());
        EXPECT_TRUE(names.insert(name).second) << name;
    }
}

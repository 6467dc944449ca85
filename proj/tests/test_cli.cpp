#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "oracles.hpp"

using namespace elimres;
using oracle::Q;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> worked_pi(std::vector<std::string> extra = {}) {
    std::vector<std::string> a{"intersect", "pi", "--vars", "s,t | X,Y,Z,T", "--params", "l,m"};
    a.insert(a.end(), extra.begin(), extra.end());
    for (const char* p : {"s^3", "s^2*t-t^3", "l*s^2*t+s*t^2", "-s^3+t^3", "-X^2+Y*T-Z*T", "-m*T+Z"}) a.push_back(p);
    // the leading '-' arguments must follow "--"
    a.insert(a.begin() + static_cast<long>(a.size()) - 6, "--");
    return a;
}

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
    return s;
}

}  // namespace

TEST(Cli, SylvesterCoprimeMonomials) {
    auto r = run_cli({"res", "sylvester", "--vars", "s,t", "s^2", "t^2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "1\n");
    EXPECT_TRUE(r.err.empty());
}

TEST(Cli, WorkedExampleCondition) {
    auto r = run_cli(worked_pi());
    ASSERT_EQ(r.code, 0) << r.err;
    oracle::WorkedExample ex;
    auto sp = make_space({{"a", "b"}}, {"l", "m"});
    EXPECT_EQ(parse_poly<Q>(trimmed(r.out), sp), change_space(ex.condition(), sp));
}

TEST(Cli, SpecializedVerdict) {
    auto r = run_cli(worked_pi({"--at", "l=0,m=0"}));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "disjoint\n");
    auto d = run_cli(worked_pi({"--at", "l=0,m=0", "--direct"}));
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_EQ(d.out, "disjoint\n");
}

TEST(Cli, SpecializedVerdictMatchesConditionValue) {
    oracle::WorkedExample ex;
    oracle::Rng rng(201);
    for (int i = 0; i < 5; ++i) {
        Q l = rng.rational(3), m = rng.rational(3);
        std::string at = "l=" + l.to_string() + ",m=" + m.to_string();
        auto r = run_cli(worked_pi({"--at", at}));
        ASSERT_EQ(r.code, 0) << r.err;
        Q v = evaluate_condition(ex.condition(), {{"l", l}, {"m", m}});
        EXPECT_EQ(r.out, v.is_zero() ? "intersecting\n" : "disjoint\n");
    }
}

TEST(Cli, JsonKeys) {
    auto r = run_cli(worked_pi({"--json"}));
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"condition", "guarantee", "detector", "method", "matrix_shapes"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["detector"], "pi");
    EXPECT_EQ(j["guarantee"], "exact");
    EXPECT_EQ(j["matrix_shapes"], nlohmann::json::parse("[[9, 9]]"));
    EXPECT_FALSE(j.contains("matrices"));

    auto s = run_cli({"res", "sylvester", "--vars", "s,t", "--json", "--dump-matrix", "s^2", "t^2"});
    ASSERT_EQ(s.code, 0) << s.err;
    auto k = nlohmann::json::parse(s.out);
    EXPECT_EQ(k["condition"], "1");
    EXPECT_EQ(k["method"], "square_det");
    EXPECT_EQ(k["degrees"], nlohmann::json::parse("[2, 2]"));
    ASSERT_TRUE(k.contains("matrices"));
    EXPECT_EQ(k["matrices"].size(), 1u);
}

TEST(Cli, DumpMatrix) {
    auto r = run_cli({"res", "sylvester", "--vars", "s,t", "--params", "a,b", "--dump-matrix", "a*s + t", "s + b*t"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string first, header;
    std::getline(lines, first);
    std::getline(lines, header);
    auto sp = make_space({{"s", "t"}}, {"a", "b"});
    EXPECT_EQ(parse_poly<Q>(first, sp), normalize(parse_poly<Q>("a*b - 1", sp)));
    EXPECT_NE(header.find("(2x2)"), std::string::npos);
}

TEST(Cli, Deterministic) {
    auto a = run_cli(worked_pi({"--json", "--dump-matrix"}));
    auto b = run_cli(worked_pi({"--json", "--dump-matrix"}));
    EXPECT_EQ(a.out, b.out);
    auto c = run_cli({"res", "curves", "--vars", "s,t | u,v", "s", "t", "s+t", "s-t", "u", "v", "2*u+v", "u+3*v"});
    auto d = run_cli({"res", "curves", "--vars", "s,t | u,v", "s", "t", "s+t", "s-t", "u", "v", "2*u+v", "u+3*v"});
    EXPECT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(c.out, d.out);
}

TEST(Cli, PrintedConditionRoundTrips) {
    auto r = run_cli({"res", "dixon", "--vars", "s,t | u,v", "--params", "l", "s*u + l*t*v", "s*v - t*u", "2*s*u + t*v + l*s*v"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {"l"});
    auto p = parse_poly<Q>(trimmed(r.out), sp);
    EXPECT_EQ(to_string(p), trimmed(r.out));
    auto e = run_cli({"eval", "--vars", "s,t | u,v", "--params", "l", trimmed(r.out)});
    ASSERT_EQ(e.code, 0) << e.err;
    EXPECT_EQ(e.out, r.out);
}

TEST(Cli, PrimeField) {
    auto r = run_cli({"res", "sylvester", "--vars", "s,t", "--params", "a", "--field", "7", "s + a*t", "s + 3*t"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto sp = make_space({{"s", "t"}}, {"a"});
    auto p = parse_poly<ModInt>(trimmed(r.out), sp, 7);
    EXPECT_EQ(p, normalize(parse_poly<ModInt>("3 - a", sp, 7)));
    auto v = run_cli({"res", "sylvester", "--vars", "s,t", "--params", "a", "--field", "7", "--at", "a=10", "s + a*t", "s + 3*t"});
    ASSERT_EQ(v.code, 0) << v.err;
    EXPECT_EQ(v.out, "0\n");
    EXPECT_EQ(run_cli({"res", "sylvester", "--vars", "s,t", "--field", "8", "s", "t"}).code, 1);
}

TEST(Cli, UsageErrorsExitOne) {
    EXPECT_EQ(run_cli({}).code, 1);
    EXPECT_EQ(run_cli({"res"}).code, 1);
    EXPECT_EQ(run_cli({"res", "sylvester", "s", "t"}).code, 1);
    EXPECT_EQ(run_cli({"res", "sylvester", "--vars", "s,t", "s"}).code, 1);
    auto unknown = run_cli({"res", "sylvester", "--vars", "s,t", "s", "w"});
    EXPECT_EQ(unknown.code, 1);
    EXPECT_NE(unknown.err.find("w"), std::string::npos);
    auto syntax = run_cli({"res", "sylvester", "--vars", "s,t", "s", "t +* s"});
    EXPECT_EQ(syntax.code, 1);
    EXPECT_FALSE(syntax.err.empty());
    EXPECT_TRUE(syntax.out.empty());
    EXPECT_EQ(run_cli(worked_pi({"--at", "l=0"})).code, 1);
    EXPECT_EQ(run_cli(worked_pi({"--direct"})).code, 1);
}

TEST(Cli, PreconditionFailuresExitTwo) {
    auto nonhom = run_cli({"res", "sylvester", "--vars", "s,t", "s + t^2", "t"});
    EXPECT_EQ(nonhom.code, 2);
    EXPECT_NE(nonhom.err.find("homogeneous"), std::string::npos);
    auto base = run_cli({"res", "curves", "--vars", "s,t | u,v", "s^2", "s*t", "s^2+s*t", "2*s*t", "u", "v", "u+v", "u-v"});
    EXPECT_EQ(base.code, 2);
    EXPECT_NE(base.err.find("base points"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
    auto r = run_cli({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("intersect"), std::string::npos);
}

TEST(Cli, IntersectPairsOfLines) {
    // (s, t, 0, 0) and (0, u, v, v) share (0:1:0:0)
    auto pp = run_cli({"intersect", "pp", "--vars", "s,t | u,v", "s", "t", "0", "0", "0", "u", "v", "v"});
    ASSERT_EQ(pp.code, 0) << pp.err;
    EXPECT_EQ(pp.out, "0\n");
    auto ii = run_cli({"intersect", "ii", "--vars", "X,Y,Z,T", "--split", "2", "X", "Y", "Z", "T"});
    ASSERT_EQ(ii.code, 0) << ii.err;
    EXPECT_EQ(ii.out, "1\n");
}

TEST(Cli, Binary) {
    const char* bin = std::getenv("ELIMRES_BIN");
    if (!bin) GTEST_SKIP() << "ELIMRES_BIN not set";
    std::string cmd = std::string(bin) + " res sylvester --vars s,t s^2 t^2";
    FILE* pipe = popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::string out;
    std::array<char, 256> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    int status = pclose(pipe);
    EXPECT_EQ(out, "1\n");
    EXPECT_EQ(WEXITSTATUS(status), 0);
    std::string bad = std::string(bin) + " res sylvester --vars s,t 's+t^2' t 2>/dev/null";
    EXPECT_EQ(WEXITSTATUS(std::system(bad.c_str())), 2);
}

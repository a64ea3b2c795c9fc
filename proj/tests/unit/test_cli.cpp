#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "app.hpp"

using namespace pbpois::app;
using nlohmann::json;

namespace {

const std::map<std::string, std::string> kEmptyEnv;

CliResult run_clean(const std::vector<std::string>& args) { return run(args, &kEmptyEnv); }

json without_timing(json r) {
    r.erase("timing-ms");
    return r;
}

void expect_valid(const CliResult& r) {
    ASSERT_TRUE(r.report.has_value()) << r.err;
    auto errors = validate(*r.report, report_schema());
    for (const auto& e : errors) ADD_FAILURE() << e;
}

struct Case {
    std::vector<std::string> args;
    int exit_code;
    std::string verdict;
};

}  // namespace

TEST(CliExitCodes, Corpus) {
    const std::vector<Case> corpus{
        {{"check-poisson", "x1*x2*(e1^e2)", "--vars", "4"}, 0, "poisson"},
        {{"check-poisson", "x3*(e1^e2) + x1*(e2^e3)"}, 0, "poisson"},
        {{"check-poisson", "x1*x3*(e1^e2) + x2*(e2^e3)"}, 1, "not-poisson"},
        {{"check-poisson", "x1*(e1^"}, 2, "usage-error"},
        {{"check-poisson", "x1*e1 + e1^e2"}, 2, "usage-error"},
        {{"check-poisson", "x1*e1"}, 2, "usage-error"},
        {{"rank", "x1*x2*(e1^e2) + x3*x4*(e3^e4)", "--vars", "4"}, 0, "computed"},
        {{"schouten", "e1", "x1**2"}, 0, "computed"},
        {{"schouten", "x1", "x2"}, 2, "usage-error"},
        {{"tangent-pois", "--n", "3", "--seed", "1", "--lambda", "2,5"}, 0, "computed"},
        {{"tangent-fol", "--n", "3", "--pi", "x1*x2*(e1^e2)"}, 0, "computed"},
        {{"tangent-pois", "--n", "3", "--pi", "x1*x3*(e1^e2) + x2**2*(e2^e3)"}, 1, "not-poisson"},
        {{"tangent-pois", "--n", "3"}, 2, "usage-error"},
        {{"verify-pullback", "--n", "3", "--seed", "2", "--lambda", "2,5"}, 0, "degenerate-coincidence"},
        {{"verify-pullback", "--n", "4", "--seed", "7", "--lambda", "2,5,11,23"}, 3, "precondition-failed"},
        {{"verify-pullback", "--n", "4", "--seed", "7", "--lambda", "1,2,3"}, 3, "precondition-failed"},
        {{"verify-pullback", "--n", "4", "--seed", "7", "--lambda", "1,-1,3"}, 3, "precondition-failed"},
        {{"verify-pullback", "--n", "2"}, 2, "usage-error"},
        {{"delta-kernel", "--lambda", "2,5,23", "--grade", "2", "--deg", "3"}, 0, "computed"},
        {{"delta-kernel", "--lambda", "1,2,3", "--grade", "2", "--deg", "2"}, 3, "precondition-failed"},
        {{"delta-kernel", "--lambda", "2,5,23", "--grade", "3"}, 2, "usage-error"},
        {{"linearize", "2*y1*e1 + 5*y2*e2 + y1**2*e2", "--order", "2"}, 0, "linearized"},
        {{"linearize", "y1*e1 + 2*y2*e2 + y1**2*e2", "--order", "2"}, 3, "precondition-failed"},
        {{"linearize", "y2*e1 + 2*y2*e2", "--order", "2"}, 3, "precondition-failed"},
        {{"decompose-alpha0", "y1*y3*(e1^e3)", "--lambda", "2,5,23", "--deg", "3"}, 0, "decomposed"},
        {{"decompose-alpha0", "y3**2*(e1^e2)", "--lambda", "2,5,23", "--deg", "3"}, 3, "precondition-failed"},
    };
    for (const auto& c : corpus) {
        CliResult r = run_clean(c.args);
        std::string joined;
        for (const auto& a : c.args) joined += a + " ";
        EXPECT_EQ(r.exit_code, c.exit_code) << joined << "\n" << r.err;
        ASSERT_TRUE(r.report.has_value()) << joined;
        EXPECT_EQ((*r.report)["verdict"], c.verdict) << joined;
        EXPECT_EQ((*r.report)["exit-code"], c.exit_code) << joined;
        expect_valid(r);
    }
}

TEST(CliExitCodes, ParserLevelFailures) {
    EXPECT_EQ(run_clean({}).exit_code, 2);
    EXPECT_EQ(run_clean({"frobnicate"}).exit_code, 2);
    EXPECT_EQ(run_clean({"rank", "e1^e2", "--bogus"}).exit_code, 2);
    EXPECT_EQ(run_clean({"verify-pullback", "--seed", "1", "--seeds", "1,2"}).exit_code, 2);
    EXPECT_EQ(run_clean({"--help"}).exit_code, 0);
    CliResult v = run_clean({"--version"});
    EXPECT_EQ(v.exit_code, 0);
    EXPECT_NE(v.out.find(kVersion), std::string::npos);
}

TEST(CliReport, MonomialBivectorAndDeformation) {
    CliResult r = run_clean({"check-poisson", "x1*x2*(e1^e2)", "--vars", "4"});
    EXPECT_EQ((*r.report)["details"]["residual"], "0");
    CliResult k = run_clean({"rank", "x1*x2*(e1^e2) + x3*x4*(e3^e4)", "--vars", "4"});
    EXPECT_EQ((*k.report)["dimensions"]["rank"], 4);
    EXPECT_EQ((*k.report)["details"]["poisson"], true);
}

TEST(CliReport, ParseErrorCarriesPosition) {
    CliResult r = run_clean({"check-poisson", "x1*(e1^"});
    const json& e = (*r.report)["error"];
    EXPECT_EQ(e["kind"], "parse");
    EXPECT_EQ(e["line"], 1);
    EXPECT_EQ(e["column"], 8);
    EXPECT_FALSE(r.err.empty());
}

TEST(CliReport, ResonanceCarriesCertificate) {
    CliResult r = run_clean({"delta-kernel", "--lambda", "1,2,3", "--grade", "2", "--deg", "2"});
    EXPECT_EQ((*r.report)["error"]["kind"], "resonance");
    bool found = false;
    for (const auto& c : (*r.report)["certificates"]) found = found || c["resonant"].get<bool>();
    EXPECT_TRUE(found);
}

TEST(CliReport, SeedBatchIsOrderedAndKeyed) {
    CliResult r = run_clean({"verify-pullback", "--n", "3", "--seeds", "3,1,2", "--lambda", "2,5"});
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ((*r.report)["seed"], json({3, 1, 2}));
    const json& runs = (*r.report)["details"]["runs"];
    ASSERT_EQ(runs.size(), 3u);
    EXPECT_EQ(runs[0]["seed"], 3);
    EXPECT_EQ(runs[2]["seed"], 2);
    EXPECT_TRUE((*r.report)["bases"].contains("tangent-pois[seed=1]"));
    expect_valid(r);
}

TEST(CliReport, DeterministicModuloTiming) {
    const std::vector<std::string> args{"verify-pullback", "--n", "3", "--seed", "5", "--lambda", "2,5"};
    CliResult a = run_clean(args), b = run_clean(args);
    EXPECT_EQ(without_timing(*a.report).dump(2), without_timing(*b.report).dump(2));
    CliResult c = run_clean({"tangent-pois", "--n", "3", "--seed", "4", "--lambda", "2,5"});
    CliResult d = run_clean({"tangent-pois", "--n", "3", "--seed", "4", "--lambda", "2,5"});
    EXPECT_EQ(without_timing(*c.report).dump(), without_timing(*d.report).dump());
}

TEST(CliReport, OutWritesFile) {
    const auto path = std::filesystem::temp_directory_path() / "pbpois_cli_out_test.json";
    std::filesystem::remove(path);
    CliResult r = run_clean({"rank", "x1*x2*(e1^e2)", "--out", path.string()});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    json j = json::parse(ss.str());
    EXPECT_EQ(j["dimensions"]["rank"], 2);
    std::filesystem::remove(path);
    EXPECT_EQ(run_clean({"rank", "e1^e2", "--out", "/nonexistent-dir/x.json"}).exit_code, 2);
}

TEST(CliReport, EnvironmentSetsDefaultDegree) {
    const std::map<std::string, std::string> env{{kDegreeEnv, "2"}};
    CliResult r = run({"delta-kernel", "--lambda", "2,5,23", "--grade", "1"}, &env);
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ((*r.report)["config-echo"]["degree"], 2);
    EXPECT_EQ((*r.report)["details"]["direct-sum"].size(), 3u);
    CliResult flag = run({"delta-kernel", "--lambda", "2,5,23", "--grade", "1", "--deg", "3"}, &env);
    EXPECT_EQ((*flag.report)["config-echo"]["degree"], 3);
    const std::map<std::string, std::string> bad{{kDegreeEnv, "four"}};
    EXPECT_EQ(run({"delta-kernel", "--lambda", "2,5,23"}, &bad).exit_code, 2);
}

TEST(CliSchema, RejectsMalformedReports) {
    CliResult r = run_clean({"rank", "e1^e2"});
    json bad = *r.report;
    bad.erase("verdict");
    EXPECT_FALSE(validate(bad, report_schema()).empty());
    json extra = *r.report;
    extra["surprise"] = 1;
    EXPECT_FALSE(validate(extra, report_schema()).empty());
    json wrong = *r.report;
    wrong["exit-code"] = "zero";
    EXPECT_FALSE(validate(wrong, report_schema()).empty());
}

#ifdef PBPOIS_SCHEMA_PATH
TEST(CliSchema, EmbeddedMatchesFile) {
    std::ifstream f(PBPOIS_SCHEMA_PATH);
    ASSERT_TRUE(f.good());
    EXPECT_EQ(json::parse(f), report_schema());
}
#endif

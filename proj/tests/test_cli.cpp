#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "grpmetric/cli.hpp"

using namespace grpmetric;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("grpmetric_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(CliEnumerate, Examples) {
    EXPECT_EQ(run({"enumerate", "--group", "Z12", "--metric", "psi:2"}).out, "t^6 + 2t^5 + 2t^4 + 2t^3 + 2t^2 + 2t + 1\n");
    EXPECT_EQ(run({"enumerate", "--group", "Z12", "--metric", "psi:6"}).out, "9t^2 + 2t + 1\n");
    EXPECT_EQ(run({"enumerate", "--group", "Z8", "--metric", "qadic:2,3"}).out, "4t^3 + 2t^2 + t + 1\n");
    EXPECT_EQ(run({"enumerate", "--group", "Z2", "--metric", "hamming"}).out, "t + 1\n");
    EXPECT_EQ(run({"enumerate", "--metric", "rt:2,3"}).out, "4t^3 + 2t^2 + t + 1\n");
    EXPECT_EQ(run({"enumerate", "--group", "Z2^8", "--metric", "diag:2,3"}).out, "240t^4 + 12t^3 + 2t^2 + t + 1\n");
    EXPECT_EQ(run({"enumerate", "--group", "D4", "--metric", "ext:4:hamming"}).out, "4t^2 + 3t + 1\n");
    EXPECT_EQ(run({"enumerate", "--group", "Q8", "--metric", "ext:4:lee"}).out, "4t^3 + t^2 + 2t + 1\n");
    EXPECT_EQ(run({"enumerate", "--group", "Z8", "--metric", "chain:geometric:2"}).out, "4t^3 + 2t^2 + t + 1\n");
    EXPECT_EQ(run({"enumerate", "--group", "Z8", "--metric", "chain:1|2|8"}).out, "6t^2 + t + 1\n");
    EXPECT_EQ(run({"enumerate", "--metric", "brt:2,1+2"}).out, "6t^2 + t + 1\n");
    EXPECT_EQ(run({"enumerate", "--metric", "hom:2,3"}).out, "t^4 + 6t^2 + 1\n");
    EXPECT_EQ(run({"enumerate", "--group", "Z6", "--metric", "lee"}).out, "t^3 + 2t^2 + 2t + 1\n");
}

TEST(CliEnumerate, JsonAndBase) {
    const Result r = run({"enumerate", "--group", "Z8", "--metric", "qadic:2,3", "--json"});
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["coeffs"], nlohmann::json::parse("[1,1,2,4]"));
    EXPECT_EQ(j["carrier"], 8);
    EXPECT_EQ(run({"enumerate", "--group", "Z8", "--metric", "qadic:2,3", "--base", "3"}).out, "4t^3 + 2t^2 + t + 1\n");
    EXPECT_EQ(run({"enumerate", "--group", "D4", "--metric", "hamming", "--base", "rs"}).out, "7t + 1\n");
    EXPECT_EQ(run({"enumerate", "--group", "Z8", "--metric", "lee", "--base", "8"}).code, 2);
}

TEST(CliEnumerate, Errors) {
    EXPECT_EQ(run({"enumerate", "--group", "Z12", "--metric", "nope"}).code, 2);
    EXPECT_EQ(run({"enumerate", "--group", "Z1x", "--metric", "hamming"}).code, 2);
    EXPECT_EQ(run({"enumerate", "--group", "Z9", "--metric", "qadic:2,3"}).code, 2);
    EXPECT_EQ(run({"enumerate", "--group", "D4", "--metric", "lee"}).code, 2);
    EXPECT_EQ(run({"enumerate", "--metric", "hamming"}).code, 2);
    EXPECT_EQ(run({"enumerate", "--group", "Z2^13", "--metric", "hamming"}).code, 2);
    EXPECT_EQ(run({"enumerate", "--group", "Z12", "--metric", "psi:5"}).code, 2);
    EXPECT_EQ(run({"enumerate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    const Result r = run({"enumerate", "--group", "Z12", "--metric", "nope"});
    EXPECT_NE(r.err.find("unknown metric"), std::string::npos);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliVerify, Examples) {
    Result r = run({"verify", "thm-5.2", "--q", "3", "--n", "3"});
    EXPECT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["status"], "pass");
    EXPECT_EQ(j["pairs_checked"], 27 * 26 / 2);
    EXPECT_EQ(j["witness"], nullptr);
    EXPECT_EQ(j["params"]["q"], "3");

    r = run({"verify", "prop-3.3", "--p", "2", "--n", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["status"], "pass");
    r = run({"verify", "ex-4.8"});
    EXPECT_EQ(r.code, 0);
    EXPECT_GT(nlohmann::json::parse(r.out)["pairs_checked"].get<int>(), 0);
}

TEST(CliVerify, EveryRegisteredCheckPassesWithDefaults) {
    for (const auto& c : check_registry()) {
        const Result r = run({"verify", c.name});
        EXPECT_EQ(r.code, 0) << c.name << "\n" << r.out << r.err;
        const auto j = nlohmann::json::parse(r.out);
        EXPECT_GT(j["pairs_checked"].get<std::uint64_t>(), 0u) << c.name;
    }
}

TEST(CliVerify, FailAndError) {
    // The prediction for (3,2) is "no full cycle"; it holds, so the check passes.
    EXPECT_EQ(run({"verify", "prop-3.3", "--p", "3", "--n", "2"}).code, 0);
    EXPECT_EQ(run({"verify", "no-such-check"}).code, 2);
    EXPECT_EQ(run({"verify"}).code, 2);
    const Result bad = run({"verify", "thm-5.2", "--q", "x"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_EQ(nlohmann::json::parse(bad.out)["status"], "error");
    const Result list = run({"verify", "--list"});
    EXPECT_EQ(list.code, 0);
    EXPECT_NE(list.out.find("thm-8.2"), std::string::npos);
}

// A check whose verification fails exits with 1 and carries a witness.
TEST(CliVerify, FailureCarriesWitness) {
    const VerificationReport r = run_check("thm-6.1", {{"g1", "Z8"}, {"g2", "Z9"}});
    EXPECT_EQ(r.status, CheckStatus::error);
    ASSERT_TRUE(r.witness);
    VerificationReport f;
    detail::CheckContext ctx(f);
    ctx.expect(false, "forced");
    EXPECT_TRUE(ctx.failed());
    EXPECT_EQ(f.witness.value_or(""), "forced");
}

TEST(CliExport, DistMatrix) {
    EXPECT_EQ(run({"export", "distmatrix", "--group", "Z2", "--metric", "hamming"}).out, "0,1\n0,1\n1,0\n");
    const std::string csv = run({"export", "distmatrix", "--group", "Z2^2", "--metric", "hamming"}).out;
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "\"(0,0)\",\"(0,1)\",\"(1,0)\",\"(1,1)\"");
}

TEST(CliExport, Dot) {
    const std::string dot = run({"export", "dot", "--group", "Z8", "--metric", "qadic:2,3"}).out;
    EXPECT_EQ(dot.rfind("graph {\n", 0), 0u);
    EXPECT_NE(dot.find("  0 -- 4 [label=1];\n"), std::string::npos);
    EXPECT_NE(dot.find("  0 -- 2 [label=2];\n"), std::string::npos);
    EXPECT_NE(dot.find("  0 -- 1 [label=3];\n"), std::string::npos);
    EXPECT_EQ(std::count(dot.begin(), dot.end(), '\n'), 2 + 28);
    EXPECT_EQ(dot, run({"export", "dot", "--group", "Z8", "--metric", "qadic:2,3"}).out);
}

TEST(CliExport, Embeddings) {
    const auto j = nlohmann::json::parse(run({"export", "embedding", "--kind", "base_q", "--q", "2", "--n", "3"}).out);
    EXPECT_EQ(j["image"], nlohmann::json::parse("[0,1,2,3,4,5,6,7]"));
    EXPECT_EQ(j["kind"], "base_q");
    const auto p = nlohmann::json::parse(run({"export", "embedding", "--kind", "psi", "--m", "6", "--n", "2"}).out);
    EXPECT_EQ(p["image"], nlohmann::json::parse("[[0,0],[2,0],[2,2],[4,2],[4,4],[0,4]]"));
    const auto r = nlohmann::json::parse(run({"export", "embedding", "--kind", "rm1", "--p", "2", "--n", "3"}).out);
    EXPECT_EQ(r["length"], 4);
    const auto c = nlohmann::json::parse(run({"export", "embedding", "--kind", "chain", "--group", "Z8", "--q", "2"}).out);
    EXPECT_EQ(c["source"], 8);
    EXPECT_NE(run({"export", "embedding", "--kind", "rm1", "--p", "2", "--n", "3", "--listing"}).out.find("|->"), std::string::npos);
    EXPECT_EQ(run({"export", "embedding", "--kind", "gray"}).code, 2);
    EXPECT_EQ(run({"export", "embedding", "--kind", "psi", "--m", "6"}).code, 2);
    EXPECT_EQ(run({"export", "table"}).code, 2);
}

TEST(CliExport, WritesFilesDeterministically) {
    const auto a = temp_path("a.csv"), b = temp_path("b.csv");
    EXPECT_EQ(run({"export", "distmatrix", "--group", "D4", "--metric", "chain:geometric:2", "--output", a.string()}).code, 0);
    EXPECT_EQ(run({"export", "distmatrix", "--group", "D4", "--metric", "chain:geometric:2", "-o", b.string()}).code, 0);
    EXPECT_FALSE(read_file(a).empty());
    EXPECT_EQ(read_file(a), read_file(b));
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    EXPECT_EQ(run({"export", "dot", "--group", "Z2", "--metric", "hamming", "--output", "/nonexistent-dir/x.dot"}).code, 2);
}

#ifdef GRPMETRIC_TOOL_PATH
TEST(CliBinary, ExitCodesThroughTheShell) {
    const auto out = temp_path("tool.txt");
    const std::string tool = GRPMETRIC_TOOL_PATH;
    int rc = std::system((tool + " enumerate --group Z12 --metric psi:2 > " + out.string()).c_str());
    EXPECT_EQ(WEXITSTATUS(rc), 0);
    EXPECT_EQ(read_file(out), "t^6 + 2t^5 + 2t^4 + 2t^3 + 2t^2 + 2t + 1\n");
    rc = std::system((tool + " verify nothing > " + out.string() + " 2>&1").c_str());
    EXPECT_EQ(WEXITSTATUS(rc), 2);
    std::filesystem::remove(out);
}
#endif

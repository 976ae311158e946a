#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "harmpadic/cli.hpp"
#include "support.hpp"

using namespace harmpadic;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("harmpadic_cli_" + std::to_string(::getpid()));
        fs::remove_all(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    CliResult run(std::vector<std::string> args) {
        args.push_back("--cache-dir");
        args.push_back(dir_.string());
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return {code, out.str(), err.str()};
    }

    fs::path dir_;
};

} // namespace

TEST_F(CliTest, Valuation) {
    EXPECT_EQ(run({"valuation", "--p", "5", "--n", "4"}).out, "2\n");
    EXPECT_EQ(run({"valuation", "--p", "11", "--n", "3546471722268916272"}).out, "3\n");
    EXPECT_EQ(run({"valuation", "--p", "7", "--n", "0"}).out, "inf\n");
    auto j = run({"valuation", "--p", "5", "--n", "4", "--json", "--digits"});
    EXPECT_EQ(j.code, 0);
    Json doc = Json::parse(j.out);
    EXPECT_EQ(doc["valuation"], 2);
    EXPECT_EQ(doc["approx"]["valuation"], 2);
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(run({"valuation", "--p", "5", "--n", "-4"}).code, 2);
    EXPECT_EQ(run({"valuation", "--p", "6", "--n", "4"}).code, 2);
    EXPECT_EQ(run({"valuation", "--p", "5"}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"jp", "--p", "3"}).code, 2);
    EXPECT_EQ(run({"wolstenholme", "--range", "20", "5"}).code, 2);
    EXPECT_EQ(run({"table", "--p", "5", "--rows", "3", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"table", "--p", "5", "--rows", "300000"}).code, 4);
    EXPECT_EQ(run({"jp", "--p", "5", "--scan", "--bound", "2000000"}).code, 4);
    EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
    auto err = run({"valuation", "--p", "5", "--n", "x"});
    EXPECT_EQ(err.code, 2);
    EXPECT_NE(err.err.find("error"), std::string::npos);
}

TEST_F(CliTest, MinimalPrecisionStillCertifies) {
    // The evaluator keeps K + 3 digits past the leading one, so nu = 3 is
    // resolved even at -K 1 --ceiling 1.
    auto r = run({"jp", "--p", "11", "-K", "1", "--ceiling", "1", "--no-cache"});
    ASSERT_EQ(r.code, 0);
    Json doc = Json::parse(r.out);
    EXPECT_EQ(doc["status"], "Complete");
    EXPECT_TRUE(doc["undetermined"].empty());
    EXPECT_EQ(run({"valuation", "--p", "11", "--n", "848", "-K", "1", "--ceiling", "1"}).out, "3\n");
}

TEST_F(CliTest, TruncatedJpIsNotCached) {
    auto r = run({"jp", "--p", "83", "--level-cap", "2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out)["status"], "Truncated");
    EXPECT_FALSE(fs::exists(dir_ / "jp" / "83.json"));
}

TEST_F(CliTest, Jp) {
    auto r = run({"jp", "--p", "5"});
    ASSERT_EQ(r.code, 0);
    Json doc = Json::parse(r.out);
    EXPECT_EQ(doc["p"], 5);
    EXPECT_EQ(doc["status"], "Complete");
    EXPECT_EQ(doc["members"], Json::parse(R"(["4","20","24"])"));
    EXPECT_TRUE(fs::exists(dir_ / "jp" / "5.json"));
    // Second run is served from the cache and prints the same document.
    EXPECT_EQ(run({"jp", "--p", "5"}).out, r.out);

    Json scan = Json::parse(run({"jp", "--p", "3", "--scan", "--bound", "1000"}).out);
    EXPECT_EQ(scan["members"], Json::parse(R"(["2","7","22"])"));
    Json empty = Json::parse(run({"jp", "--p", "2", "--scan", "--bound", "1000"}).out);
    EXPECT_TRUE(empty["members"].empty());

    Json eleven = Json::parse(run({"jp", "--p", "11", "--no-cache"}).out);
    std::set<std::string> members(eleven["members"].begin(), eleven["members"].end());
    for (const char* n : {"848", "9338", "10583"}) EXPECT_TRUE(members.count(n)) << n;
    EXPECT_FALSE(fs::exists(dir_ / "jp" / "11.json"));
}

TEST_F(CliTest, Wolstenholme) {
    Json one = Json::parse(run({"wolstenholme", "--p", "16843"}).out);
    EXPECT_EQ(one["p"], 16843);
    EXPECT_EQ(one["is_wolstenholme"], true);
    Json seven = Json::parse(run({"wolstenholme", "--p", "7"}).out);
    EXPECT_EQ(seven["is_wolstenholme"], false);
    EXPECT_EQ(seven["h_p_minus_1_valuation"], 2);

    auto scan = run({"wolstenholme", "--range", "5", "20000", "--workers", "4"});
    ASSERT_EQ(scan.code, 0);
    std::istringstream lines(scan.out);
    std::vector<u64> positives;
    std::size_t count = 0;
    for (std::string l; std::getline(lines, l); ++count) {
        Json j = Json::parse(l);
        if (j["is_wolstenholme"]) positives.push_back(j["p"]);
    }
    EXPECT_EQ(count, 2260u);
    EXPECT_EQ(positives, std::vector<u64>{16843});
    EXPECT_TRUE(fs::exists(dir_ / "wolstenholme" / "5-20000.json"));

    auto resumed = run({"wolstenholme", "--range", "5", "20000", "--resume", "--only-positive"});
    EXPECT_EQ(resumed.code, 0);
    EXPECT_NE(resumed.err.find("resuming"), std::string::npos);
    EXPECT_EQ(Json::parse(resumed.out)["p"], 16843);
}

TEST_F(CliTest, TowerAndTable) {
    auto t = run({"tower", "--p", "16843", "--n", "16842"});
    ASSERT_EQ(t.code, 0);
    EXPECT_EQ(Json::parse(t.out)["classification"]["case"], "Wolstenholme-case1");
    auto text = run({"tower", "--p", "5", "--n", "4", "--mmax", "3", "--format", "text"});
    EXPECT_EQ(text.out, "Descent: 2 1 0 -1\n");

    auto csv = run({"table", "--p", "5", "--rows", "26", "--format", "csv"});
    ASSERT_EQ(csv.code, 0);
    EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "m,k=0,k=1,k=2,k=3,k=4");
    EXPECT_NE(csv.out.find("\n25,-3,-3,-3,-3,-3\n"), std::string::npos);
    Json tj = Json::parse(run({"table", "--p", "5", "--rows", "2", "--json"}).out);
    EXPECT_EQ(tj["rows"][0][0], "inf");
}

TEST_F(CliTest, Verify) {
    auto r = run({"verify", "--suite", "formula1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("formula1: "), std::string::npos);
    EXPECT_NE(r.out.find(" 0 failed"), std::string::npos);
    Json j = Json::parse(run({"verify", "--suite", "kummer", "--json"}).out);
    EXPECT_EQ(j["ok"], true);
}

TEST_F(CliTest, EnvironmentMirrorsFlagsAndFlagsWin) {
    ::setenv("HARMPADIC_P", "5", 1);
    ::setenv("HARMPADIC_N", "24", 1);
    EXPECT_EQ(run({"valuation"}).out, "1\n");
    EXPECT_EQ(run({"valuation", "--n", "4"}).out, "2\n");
    ::setenv("HARMPADIC_FORMAT", "json", 1);
    EXPECT_EQ(Json::parse(run({"valuation"}).out)["valuation"], 1);
    EXPECT_EQ(run({"valuation", "--format", "text"}).out, "1\n");
    ::unsetenv("HARMPADIC_P");
    ::unsetenv("HARMPADIC_N");
    ::unsetenv("HARMPADIC_FORMAT");
}

TEST_F(CliTest, EmittedDocumentsRevalidate) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"valuation", "--p", "5", "--n", "4", "--json"},
             {"jp", "--p", "7"},
             {"jp", "--p", "3", "--scan", "--bound", "100"},
             {"wolstenholme", "--p", "13"},
             {"tower", "--p", "11", "--n", "848"},
             {"table", "--p", "7", "--rows", "4", "--json"},
             {"verify", "--suite", "vonstaudt", "--json"}}) {
        auto r = run(args);
        EXPECT_EQ(r.code, 0) << args[0];
        EXPECT_NO_THROW(validate_document(Json::parse(r.out))) << args[0];
    }
}

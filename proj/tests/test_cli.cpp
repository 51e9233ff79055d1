#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cli.hpp"

namespace ordstat {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "", cli::Environment env = {}) {
    args.insert(args.begin(), "ordstat");
    std::istringstream in(stdin_text);
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, in, out, err, env);
    return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

TEST(CliSelect, Examples) {
    EXPECT_EQ(run({"select", "--rank", "2"}, "5 1 9").out, "5\n");
    EXPECT_EQ(run({"select", "--rank", "1"}, "7").out, "7\n");
    const Result r = run({"select", "--rank", "4"}, "5 1 9");
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(r.out.empty());
    EXPECT_FALSE(r.err.empty());
}

TEST(CliSelect, AllModesAgree) {
    for (const char* mode : {"naive", "memo", "expr"}) {
        EXPECT_EQ(run({"select", "--rank", "3", "--mode", mode}, "4, -2.5, 8e1, 0, 3").out, "3\n") << mode;
    }
    EXPECT_EQ(run({"select", "--rank", "1", "--mode", "expr", "--form", "arithmetic"}, "3 1 2").out, "1\n");
}

TEST(CliSelect, JsonOutput) {
    const Result r = run({"select", "--rank", "2", "--mode", "naive", "--format", "json"}, "[5, 1, 9]");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["n"], 2);
    EXPECT_EQ(j["value"], 5.0);
    EXPECT_EQ(j["stats"]["base_case_calls"], 3);
    EXPECT_EQ(j["stats"]["memo_hits"], 0);
}

TEST(CliSelect, InputErrors) {
    EXPECT_EQ(run({"select", "--rank", "1"}, "1 nan").code, 2);
    EXPECT_EQ(run({"select", "--rank", "1"}, "1 inf").code, 2);
    EXPECT_EQ(run({"select", "--rank", "1"}, "").code, 2);
    EXPECT_EQ(run({"select", "--rank", "1"}, "1 x").code, 2);
    EXPECT_EQ(run({"select", "--rank", "1", "/nonexistent/input"}).code, 2);
    EXPECT_EQ(run({"select"}, "1").code, 2);
    EXPECT_EQ(run({"select", "--rank", "1", "--mode", "quick"}, "1").code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(CliSelect, ReadsFile) {
    const auto path = std::filesystem::temp_directory_path() / "ordstat_cli_input.txt";
    {
        std::ofstream f(path);
        f << "9\n8\n7\n";
    }
    EXPECT_EQ(run({"select", "--rank", "1", path.string()}).out, "7\n");
    std::filesystem::remove(path);
}

TEST(CliSelect, Budget) {
    const std::string six = "1 2 3 4 5 6";
    // naive (6,4) needs 4^3 = 64 base calls
    EXPECT_EQ(run({"select", "--rank", "4", "--mode", "naive", "--budget", "63"}, six).code, 3);
    EXPECT_EQ(run({"select", "--rank", "4", "--mode", "naive", "--budget", "64"}, six).out, "4\n");
    EXPECT_EQ(run({"select", "--rank", "4", "--mode", "naive"}, six, {"10"}).code, 3);
    EXPECT_EQ(run({"select", "--rank", "4", "--mode", "naive", "--budget", "64"}, six, {"10"}).code, 0);
    EXPECT_EQ(run({"select", "--rank", "4"}, six, {"oops"}).code, 3);
}

TEST(CliMedian, Examples) {
    EXPECT_EQ(run({"median"}, "3 1 2").out, "2\n");
    EXPECT_EQ(run({"median"}, "4 1 3 2").out, "2.5\n");
    EXPECT_EQ(run({"median", "--mode", "naive"}, "7").out, "7\n");
    EXPECT_EQ(run({"median"}, "1;2").code, 2);
    const auto j = nlohmann::json::parse(run({"median", "--format", "json"}, "4 1 3 2").out);
    EXPECT_EQ(j["median"], 2.5);
}

TEST(CliEmit, Examples) {
    EXPECT_EQ(run({"emit", "--n", "2", "--rank", "1", "--form", "arithmetic"}).out, "((x1 + x2) - |x1 - x2|)/2\n");
    EXPECT_EQ(run({"emit", "--n", "1", "--rank", "1"}).out, "x1\n");
    EXPECT_EQ(run({"emit", "--n", "3", "--rank", "2", "--form", "minmax"}).out,
              "max(max(min(x2, x3), min(x1, x3)), min(x1, x2))\n");
    EXPECT_EQ(run({"emit", "--n", "2", "--rank", "2", "--syntax", "sexpr"}).out, "(max (var 2) (var 1))\n");
    EXPECT_EQ(run({"emit", "--n", "3", "--rank", "4"}).code, 3);
    EXPECT_EQ(run({"emit", "--n", "30", "--rank", "15"}).code, 3);
}

TEST(CliEmit, SlpProgram) {
    EXPECT_EQ(run({"emit", "--n", "2", "--rank", "1", "--syntax", "slp"}).out,
              "t1 = add x1 x2\n"
              "t2 = sub x1 x2\n"
              "t3 = abs t2\n"
              "t4 = sub t1 t3\n"
              "t5 = halve t4\n"
              "result t5\n");
}

TEST(CliVerify, Examples) {
    const Result ex = run({"verify", "--exhaustive", "--max-n", "5", "--jobs", "2"});
    EXPECT_EQ(ex.code, 0) << ex.err;
    const auto j = nlohmann::json::parse(ex.out);
    EXPECT_EQ(j["passed"], true);
    EXPECT_EQ(j["failure_count"], 0);
    EXPECT_GT(j["cases_run"].get<std::uint64_t>(), 5000u);

    const Result one = run({"verify", "--random", "--trials", "1", "--seed", "0"});
    EXPECT_EQ(one.code, 0);
    EXPECT_GE(nlohmann::json::parse(one.out)["cases_run"].get<std::uint64_t>(), 1u);
    EXPECT_EQ(one.out, run({"verify", "--random", "--trials", "1", "--seed", "0"}).out);

    const Result bad = run({"verify", "--exhaustive", "--max-n", "4", "--inject-fault", "--max-failures", "3"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_EQ(nlohmann::json::parse(bad.out)["failures"].size(), 3u);
}

TEST(CliVerify, Errors) {
    EXPECT_EQ(run({"verify", "--exhaustive", "--max-n", "20"}).code, 3);
    EXPECT_EQ(run({"verify", "--exhaustive", "--alphabet", "0,1,x"}).code, 2);
    EXPECT_EQ(run({"verify", "--random", "--trials", "0"}).code, 2);
}

TEST(CliBench, GrowthRows) {
    const Result r = run({"bench", "--growth", "--max-n", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(r.out), 37u);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "N,n,mode,base_case_calls,memo_hits,tree_nodes,dag_nodes,wall_time_s");
    EXPECT_NE(r.out.find("\n4,3,naive,9,0,"), std::string::npos);

    EXPECT_EQ(run({"bench", "--growth", "--max-n", "1"}).out,
              "N,n,mode,base_case_calls,memo_hits,tree_nodes,dag_nodes,wall_time_s\n1,1,naive,1,0,1,1,0\n");
    EXPECT_EQ(lines(run({"bench", "--max-n", "3", "--mode", "all"}).out), 13u);
    EXPECT_EQ(nlohmann::json::parse(run({"bench", "--max-n", "3", "--format", "json"}).out).size(), 6u);
}

TEST(CliBench, CompareAndErrors) {
    const Result r = run({"bench", "--compare", "--n", "6", "--trials", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(r.out), 4u);
    EXPECT_EQ(run({"bench", "--growth", "--compare"}).code, 2);
    EXPECT_EQ(run({"bench", "--compare", "--n", "3", "--rank", "5"}).code, 3);
    EXPECT_EQ(run({"bench", "--max-n", "6", "--budget", "10"}).code, 3);
}

TEST(CliDeterminism, RepeatRunsAreByteIdentical) {
    const std::vector<std::vector<std::string>> commands{
        {"verify", "--max-n", "5", "--trials", "500", "--seed", "7", "--jobs", "3"},
        {"verify", "--random", "--trials", "300", "--seed", "3", "--inject-fault"},
        {"bench", "--growth", "--max-n", "6", "--mode", "all"},
        {"bench", "--compare", "--n", "7", "--trials", "20", "--seed", "9", "--format", "json"},
    };
    for (const auto& cmd : commands) {
        const Result a = run(cmd);
        const Result b = run(cmd);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out);
    }
}

} // namespace
} // namespace ordstat

#include <gtest/gtest.h>

#include "json.hpp"

#include "ordstat/errors.hpp"
#include "ordstat/verify.hpp"

namespace ordstat {
namespace {

TEST(OracleSelect, Examples) {
    EXPECT_EQ(oracle_select(Rank{2}, RealSequence{5, 1, 9}), 5);
    EXPECT_EQ(oracle_select(Rank{1}, RealSequence{7}), 7);
    EXPECT_EQ(oracle_select(Rank{3}, RealSequence{2, 2, 1}), 2);
    EXPECT_THROW((void)oracle_select(Rank{4}, RealSequence{2, 2, 1}), RankError);
    EXPECT_EQ(oracle_median(RealSequence{4, 1, 3, 2}), 2.5);
}

TEST(ExhaustiveVerify, SmallAlphabetPasses) {
    VerifyPlan plan;
    plan.max_n = 5;
    const VerifyReport r = exhaustive_verify(plan);
    // sum over N <= 5 of N * 4^N
    EXPECT_EQ(r.cases_run, 4u + 2 * 16u + 3 * 64u + 4 * 256u + 5 * 1024u);
    EXPECT_TRUE(r.passed());
    EXPECT_TRUE(r.failures.empty());
}

TEST(ExhaustiveVerify, ConstantSequences) {
    VerifyPlan plan;
    plan.alphabet = {0};
    plan.max_n = 3;
    const VerifyReport r = exhaustive_verify(plan);
    EXPECT_EQ(r.cases_run, 6u);
    EXPECT_TRUE(r.passed());
}

TEST(ExhaustiveVerify, NegativeControlFails) {
    VerifyPlan plan;
    plan.max_n = 4;
    plan.inject_fault = true;
    plan.max_recorded_failures = 5;
    const VerifyReport r = exhaustive_verify(plan);
    EXPECT_FALSE(r.passed());
    EXPECT_GT(r.failure_count, 5u);
    ASSERT_EQ(r.failures.size(), 5u);
    for (const auto& f : r.failures) {
        EXPECT_EQ(f.mode, "naive");
        EXPECT_NE(f.expected, f.actual);
    }
}

TEST(ExhaustiveVerify, WorkerCountDoesNotChangeReport) {
    VerifyPlan plan;
    plan.max_n = 6;
    plan.inject_fault = true;
    plan.max_recorded_failures = 40;
    const VerifyReport one = exhaustive_verify(plan);
    plan.workers = 4;
    const VerifyReport four = exhaustive_verify(plan);
    EXPECT_EQ(one, four);
    EXPECT_EQ(report_json(one), report_json(four));
}

TEST(ExhaustiveVerify, CaseBudget) {
    VerifyPlan plan;
    plan.max_n = 12;
    EXPECT_THROW((void)exhaustive_verify(plan), BudgetError);
    plan.max_n = 3;
    plan.case_budget = 100; // 4^3 * 3 = 192
    EXPECT_THROW((void)exhaustive_verify(plan), BudgetError);
    plan.alphabet.clear();
    EXPECT_THROW((void)exhaustive_verify(plan), InvalidInput);
}

TEST(ExhaustiveVerify, SkipsModesBeyondRecursionBudget) {
    VerifyPlan plan;
    plan.max_n = 5;
    plan.budget = Budget{20}; // memo still fits, naive (5,4) = 27 does not
    const VerifyReport r = exhaustive_verify(plan);
    EXPECT_TRUE(r.passed());
}

TEST(RandomVerify, SeededRunPasses) {
    VerifyPlan plan;
    plan.max_n = 9;
    plan.random_trials = 2000;
    plan.seed = 1;
    const VerifyReport r = random_verify(plan);
    EXPECT_TRUE(r.passed()) << report_json(r);
    EXPECT_GT(r.cases_run, 2000u);
}

TEST(RandomVerify, SingleTrial) {
    VerifyPlan plan;
    plan.random_trials = 1;
    plan.seed = 0;
    plan.max_n = 1;
    const VerifyReport r = random_verify(plan);
    EXPECT_EQ(r.cases_run, 1u);
    EXPECT_TRUE(r.passed());
}

TEST(RandomVerify, Deterministic) {
    VerifyPlan plan;
    plan.max_n = 8;
    plan.random_trials = 300;
    plan.seed = 99;
    plan.inject_fault = true;
    const VerifyReport a = random_verify(plan);
    const VerifyReport b = random_verify(plan);
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a.passed());
    plan.seed = 100;
    EXPECT_NE(random_verify(plan), a);
}

TEST(RandomVerify, ZeroToleranceStillPassesExactModes) {
    // arithmetic-form results may round; with zero tolerance only that
    // mode can report failures
    VerifyPlan plan;
    plan.max_n = 6;
    plan.random_trials = 500;
    plan.tolerance = 0;
    const VerifyReport r = random_verify(plan);
    for (const auto& f : r.failures) {
        EXPECT_EQ(f.mode, "expr_arithmetic");
    }
}

TEST(ReportJson, Shape) {
    VerifyReport r;
    r.cases_run = 3;
    r.failure_count = 1;
    r.failures.push_back({{1, 2}, 2, 2, 1, "naive"});
    const auto j = nlohmann::json::parse(report_json(r));
    EXPECT_EQ(j["cases_run"], 3);
    EXPECT_EQ(j["failure_count"], 1);
    EXPECT_EQ(j["passed"], false);
    ASSERT_EQ(j["failures"].size(), 1u);
    EXPECT_EQ(j["failures"][0]["input"], nlohmann::json::array({1.0, 2.0}));
    EXPECT_EQ(j["failures"][0]["rank"], 2);
    EXPECT_EQ(j["failures"][0]["mode"], "naive");
}

} // namespace
} // namespace ordstat

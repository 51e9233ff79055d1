#include <gtest/gtest.h>

#include "ordstat/errors.hpp"
#include "ordstat/expr.hpp"
#include "ordstat/slp.hpp"
#include "test_support.hpp"

namespace ordstat {
namespace {

TEST(EmitSlp, MinOfTwo) {
    const auto e = cse(build_selection_expr(2, Rank{1}, ExprForm::arithmetic)).first;
    const CompiledProgram p = emit_slp(e);
    ASSERT_EQ(p.instructions.size(), 5u);
    std::vector<ExprOp> ops;
    for (const auto& ins : p.instructions) {
        ops.push_back(ins.op);
    }
    EXPECT_EQ(ops, (std::vector<ExprOp>{ExprOp::add, ExprOp::sub, ExprOp::abs, ExprOp::sub, ExprOp::halve}));
    EXPECT_EQ(format_slp(p),
              "t1 = add x1 x2\n"
              "t2 = sub x1 x2\n"
              "t3 = abs t2\n"
              "t4 = sub t1 t3\n"
              "t5 = halve t4\n"
              "result t5\n");
}

TEST(EmitSlp, SingleVariable) {
    const CompiledProgram p = emit_slp(expr::var(1));
    EXPECT_TRUE(p.instructions.empty());
    EXPECT_EQ(p.result, (SlpOperand{SlpOperand::Kind::input, 1, 0}));
    EXPECT_EQ(format_slp(p), "result x1\n");
    const std::vector<double> xs{4.25};
    EXPECT_EQ(run_program(p, xs), 4.25);
}

TEST(EmitSlp, RejectsMinmax) {
    EXPECT_THROW((void)emit_slp(build_selection_expr(2, Rank{1}, ExprForm::minmax)), FormError);
    EXPECT_NO_THROW((void)compile_program(build_selection_expr(2, Rank{1}, ExprForm::minmax)));
}

TEST(EmitSlp, SingleAssignmentAndTopologicalOrder) {
    const auto e = cse(build_selection_expr(5, Rank{3}, ExprForm::arithmetic)).first;
    const CompiledProgram p = emit_slp(e);
    for (std::size_t k = 0; k < p.instructions.size(); ++k) {
        const auto& ins = p.instructions[k];
        EXPECT_EQ(ins.dest, k + 1);
        for (const SlpOperand* o : {&ins.a, &ins.b}) {
            if (o->kind == SlpOperand::Kind::temp) {
                EXPECT_LT(o->index, ins.dest);
            }
        }
    }
    EXPECT_EQ(p.instructions.size() + 5, cse(e).second.node_count_dag);
}

TEST(RunProgram, MatchesEvalExpr) {
    testing::Points pts(31);
    for (std::size_t len = 1; len <= 6; ++len) {
        for (std::size_t n = 1; n <= len; ++n) {
            const auto e = cse(build_selection_expr(len, Rank{n}, ExprForm::arithmetic)).first;
            const CompiledProgram p = emit_slp(e);
            const auto mm = build_selection_expr(len, Rank{n}, ExprForm::minmax);
            const CompiledProgram q = compile_program(mm);
            for (int i = 0; i < 1000 / static_cast<int>(len * n) + 1; ++i) {
                const auto xs = pts.reals(len, -1e6, 1e6);
                ASSERT_EQ(run_program(p, xs), eval_expr(e, xs));
                ASSERT_EQ(run_program(q, xs), eval_expr(mm, xs));
            }
        }
    }
    const auto min2 = emit_slp(build_selection_expr(2, Rank{1}, ExprForm::arithmetic));
    for (int i = 0; i < 1000; ++i) {
        const auto xs = pts.reals(2, -1e6, 1e6);
        ASSERT_EQ(run_program(min2, xs), eval_expr(build_selection_expr(2, Rank{1}, ExprForm::arithmetic), xs));
    }
}

TEST(RunProgram, MissingInput) {
    const auto p = emit_slp(expr::add(expr::var(1), expr::var(3)));
    const std::vector<double> xs{1, 2};
    EXPECT_THROW((void)run_program(p, xs), EvalError);
}

TEST(SlpText, ParsesWhatItFormats) {
    for (std::size_t len = 1; len <= 5; ++len) {
        for (std::size_t n = 1; n <= len; ++n) {
            const auto p = emit_slp(cse(build_selection_expr(len, Rank{n}, ExprForm::arithmetic)).first);
            EXPECT_EQ(parse_slp(format_slp(p)), p);
        }
    }
    const auto c = emit_slp(expr::halve(expr::add(expr::var(2), expr::constant(-1.5))));
    EXPECT_EQ(format_slp(c), "t1 = add x2 -1.5\nt2 = halve t1\nresult t2\n");
    EXPECT_EQ(parse_slp(format_slp(c)), c);
}

TEST(SlpText, Errors) {
    for (const char* bad : {"t1 = add x1 x2\n",                  // no result
                            "t1 = add x1 t1\nresult t1\n",       // use before definition
                            "t2 = add x1 x2\nresult t2\n",       // not sequential
                            "t1 = mul x1 x2\nresult t1\n",       // unknown op
                            "t1 = abs x1 x2\nresult t1\n",       // too many operands
                            "t1 = add x1\nresult t1\n",          // missing operand
                            "result x1\nt1 = abs x1\n",          // after result
                            "t1 = add x1 nan\nresult t1\n"}) {
        EXPECT_THROW((void)parse_slp(bad), InvalidInput) << bad;
    }
}

} // namespace
} // namespace ordstat

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <utility>

#include "ordstat/sequence.hpp"

namespace ordstat {

enum class ExprOp : std::uint8_t { var, constant, add, sub, abs, halve, min, max };

[[nodiscard]] std::string_view op_name(ExprOp op) noexcept;
[[nodiscard]] constexpr int arity(ExprOp op) noexcept {
    switch (op) {
    case ExprOp::var:
    case ExprOp::constant: return 0;
    case ExprOp::abs:
    case ExprOp::halve: return 1;
    default: return 2;
    }
}

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

/// Immutable expression node. Children are shared, so an expression is a
/// DAG; structurally equal subtrees are only merged by cse().
struct ExprNode {
    ExprOp op;
    std::size_t var_index = 0; // 1-based, var only
    double value = 0;          // constant only
    ExprPtr lhs;               // unary operand lives here
    ExprPtr rhs;
};

namespace expr {
[[nodiscard]] ExprPtr var(std::size_t index);
[[nodiscard]] ExprPtr constant(double value);
[[nodiscard]] ExprPtr add(ExprPtr l, ExprPtr r);
[[nodiscard]] ExprPtr sub(ExprPtr l, ExprPtr r);
[[nodiscard]] ExprPtr abs(ExprPtr c);
[[nodiscard]] ExprPtr halve(ExprPtr c);
[[nodiscard]] ExprPtr min(ExprPtr l, ExprPtr r);
[[nodiscard]] ExprPtr max(ExprPtr l, ExprPtr r);
} // namespace expr

enum class ExprForm { minmax, arithmetic };

struct ExprMetrics {
    std::uint64_t node_count_tree = 0; // nodes after full expansion, saturating
    std::uint64_t node_count_dag = 0;  // distinct node objects
    std::uint64_t depth = 0;           // a lone leaf has depth 1
    friend bool operator==(const ExprMetrics&, const ExprMetrics&) = default;
};

/// Formula for the n-th smallest of x_1..x_N following the selection
/// recursion: n = 1 is a left-folded min chain, otherwise a left-folded
/// max over the eliminations j = 1..N-n+2. The arithmetic form is the
/// minmax form passed through lower_minmax_to_arith. Throws RankError or
/// BudgetError (same limit as select_naive).
[[nodiscard]] ExprPtr build_selection_expr(std::size_t length, Rank n, ExprForm form, Budget budget = {});

/// Min(a,b) -> (a + b - |a - b|)/2, Max(a,b) -> (a + b + |a - b|)/2.
/// Existing sharing is preserved; each lowered operand is shared by its
/// two uses.
[[nodiscard]] ExprPtr lower_minmax_to_arith(const ExprPtr& e);

/// Hash-conses structurally identical subtrees. Operand order matters
/// (no commutative normalisation). Metrics compare the input expanded as a
/// tree with the resulting DAG.
[[nodiscard]] std::pair<ExprPtr, ExprMetrics> cse(const ExprPtr& e);

[[nodiscard]] ExprMetrics measure(const ExprPtr& e);

/// Bottom-up evaluation with x_i = values[i-1]. Min/Max use comparisons.
/// Throws EvalError on a missing variable or a non-finite intermediate.
[[nodiscard]] double eval_expr(const ExprPtr& e, std::span<const double> values);

[[nodiscard]] bool contains_minmax(const ExprPtr& e);
[[nodiscard]] bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

} // namespace ordstat

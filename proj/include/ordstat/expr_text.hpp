#pragma once

#include <string>
#include <string_view>

#include "ordstat/expr.hpp"

namespace ordstat {

enum class TextSyntax { infix, sexpr };

/// Deterministic rendering.
///
/// infix: variables x1..xN, every add/sub wrapped in parentheses except
/// directly inside |...|, halving as a "/2" suffix, min(a, b) / max(a, b):
///
///     ((x1 + x2) - |x1 - x2|)/2
///
/// sexpr: fully parenthesised prefix form, e.g. (halve (sub (add (var 1)
/// (var 2)) (abs (sub (var 1) (var 2))))).
///
/// Shared subexpressions are printed once per use.
[[nodiscard]] std::string emit_text(const ExprPtr& e, TextSyntax syntax);

/// Inverse of emit_text; throws InvalidInput on malformed text.
[[nodiscard]] ExprPtr parse_text(std::string_view text, TextSyntax syntax);

} // namespace ordstat

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ordstat/expr.hpp"

namespace ordstat {

struct SlpOperand {
    enum class Kind { input, temp, constant };
    Kind kind = Kind::input;
    std::size_t index = 0; // 1-based input or temp number
    double value = 0;      // constant only
    friend bool operator==(const SlpOperand&, const SlpOperand&) = default;
};

struct SlpInstruction {
    std::size_t dest = 0; // temp number, equal to the 1-based position in the program
    ExprOp op = ExprOp::add;
    SlpOperand a;
    SlpOperand b; // unused for abs / halve
    friend bool operator==(const SlpInstruction&, const SlpInstruction&) = default;
};

/// Single-assignment, branch-free program. Every operand is an input, a
/// constant or a temp defined by an earlier instruction.
struct CompiledProgram {
    std::vector<SlpInstruction> instructions;
    SlpOperand result;
    friend bool operator==(const CompiledProgram&, const CompiledProgram&) = default;
};

/// Lowers an arithmetic-form expression (ideally after cse) to an SLP, one
/// instruction per distinct interior node in post-order. Throws FormError
/// if min/max nodes remain.
[[nodiscard]] CompiledProgram emit_slp(const ExprPtr& e);

/// Like emit_slp but also accepts min/max, which become comparison
/// instructions. Used for fast repeated evaluation of minmax formulas.
[[nodiscard]] CompiledProgram compile_program(const ExprPtr& e);

[[nodiscard]] double run_program(const CompiledProgram& program, std::span<const double> inputs);

/// Line format:
///     t<k> = <op> <arg> [<arg>]
///     result <arg>
/// where <arg> is x<i>, t<k> or a decimal literal.
[[nodiscard]] std::string format_slp(const CompiledProgram& program);
[[nodiscard]] CompiledProgram parse_slp(std::string_view text);

} // namespace ordstat

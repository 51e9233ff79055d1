#include "ordstat/slp.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "ordstat/errors.hpp"
#include "ordstat/format.hpp"

namespace ordstat {

namespace {

class Emitter {
public:
    explicit Emitter(CompiledProgram& program) : program_(program) {}

    SlpOperand run(const ExprPtr& e) {
        if (auto it = done_.find(e.get()); it != done_.end()) {
            return it->second;
        }
        SlpOperand out;
        if (e->op == ExprOp::var) {
            out = {SlpOperand::Kind::input, e->var_index, 0};
        } else if (e->op == ExprOp::constant) {
            out = {SlpOperand::Kind::constant, 0, e->value};
        } else {
            SlpInstruction ins;
            ins.op = e->op;
            ins.a = run(e->lhs);
            if (arity(e->op) == 2) {
                ins.b = run(e->rhs);
            }
            ins.dest = program_.instructions.size() + 1;
            program_.instructions.push_back(ins);
            out = {SlpOperand::Kind::temp, ins.dest, 0};
        }
        done_.emplace(e.get(), out);
        return out;
    }

private:
    CompiledProgram& program_;
    std::unordered_map<const ExprNode*, SlpOperand> done_;
};

std::string operand_text(const SlpOperand& o) {
    switch (o.kind) {
    case SlpOperand::Kind::input: return "x" + std::to_string(o.index);
    case SlpOperand::Kind::temp: return "t" + std::to_string(o.index);
    case SlpOperand::Kind::constant: return format_real(o.value);
    }
    return {};
}

SlpOperand parse_operand(std::string_view tok, std::size_t defined, std::size_t line) {
    auto fail = [&](const std::string& what) -> SlpOperand {
        throw InvalidInput("slp line " + std::to_string(line) + ": " + what);
    };
    if (tok.empty()) {
        return fail("missing operand");
    }
    if (tok[0] == 'x' || tok[0] == 't') {
        std::size_t idx = 0;
        const auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), idx);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || idx == 0) {
            return fail("bad operand '" + std::string(tok) + "'");
        }
        if (tok[0] == 't' && idx > defined) {
            return fail("temp t" + std::to_string(idx) + " used before definition");
        }
        return {tok[0] == 'x' ? SlpOperand::Kind::input : SlpOperand::Kind::temp, idx, 0};
    }
    double v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        return fail("bad operand '" + std::string(tok) + "'");
    }
    return {SlpOperand::Kind::constant, 0, v};
}

ExprOp parse_op(std::string_view name, std::size_t line) {
    for (ExprOp op : {ExprOp::add, ExprOp::sub, ExprOp::abs, ExprOp::halve, ExprOp::min, ExprOp::max}) {
        if (op_name(op) == name) {
            return op;
        }
    }
    throw InvalidInput("slp line " + std::to_string(line) + ": unknown op '" + std::string(name) + "'");
}

} // namespace

CompiledProgram compile_program(const ExprPtr& e) {
    CompiledProgram program;
    Emitter emitter(program);
    program.result = emitter.run(e);
    return program;
}

CompiledProgram emit_slp(const ExprPtr& e) {
    if (contains_minmax(e)) {
        throw FormError("min/max nodes must be lowered before emitting a straight-line program");
    }
    return compile_program(e);
}

double run_program(const CompiledProgram& program, std::span<const double> inputs) {
    std::vector<double> temps(program.instructions.size() + 1);
    auto load = [&](const SlpOperand& o) {
        switch (o.kind) {
        case SlpOperand::Kind::input:
            if (o.index > inputs.size()) {
                throw EvalError("no value assigned to x" + std::to_string(o.index));
            }
            return inputs[o.index - 1];
        case SlpOperand::Kind::temp: return temps[o.index];
        case SlpOperand::Kind::constant: return o.value;
        }
        return 0.0;
    };
    for (const SlpInstruction& ins : program.instructions) {
        const double a = load(ins.a);
        double v = 0;
        switch (ins.op) {
        case ExprOp::add: v = a + load(ins.b); break;
        case ExprOp::sub: v = a - load(ins.b); break;
        case ExprOp::abs: v = std::fabs(a); break;
        case ExprOp::halve: v = a / 2; break;
        case ExprOp::min: {
            const double b = load(ins.b);
            v = b < a ? b : a;
            break;
        }
        case ExprOp::max: {
            const double b = load(ins.b);
            v = b > a ? b : a;
            break;
        }
        default: throw FormError("leaf op inside program");
        }
        temps[ins.dest] = v;
    }
    return load(program.result);
}

std::string format_slp(const CompiledProgram& program) {
    std::string out;
    for (const SlpInstruction& ins : program.instructions) {
        out += "t" + std::to_string(ins.dest) + " = " + std::string(op_name(ins.op)) + " " + operand_text(ins.a);
        if (arity(ins.op) == 2) {
            out += " " + operand_text(ins.b);
        }
        out += '\n';
    }
    out += "result " + operand_text(program.result) + "\n";
    return out;
}

CompiledProgram parse_slp(std::string_view text) {
    CompiledProgram program;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool have_result = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream words(line);
        std::string first;
        if (!(words >> first)) {
            continue;
        }
        if (have_result) {
            throw InvalidInput("slp line " + std::to_string(lineno) + ": instructions after result");
        }
        std::string rest;
        if (first == "result") {
            std::string arg;
            if (!(words >> arg) || (words >> rest)) {
                throw InvalidInput("slp line " + std::to_string(lineno) + ": expected 'result <arg>'");
            }
            program.result = parse_operand(arg, program.instructions.size(), lineno);
            have_result = true;
            continue;
        }
        const std::size_t expected = program.instructions.size() + 1;
        std::string eq;
        std::string name;
        if (first != "t" + std::to_string(expected) || !(words >> eq) || eq != "=" || !(words >> name)) {
            throw InvalidInput("slp line " + std::to_string(lineno) + ": expected 't" +
                               std::to_string(expected) + " = <op> ...'");
        }
        SlpInstruction ins;
        ins.dest = expected;
        ins.op = parse_op(name, lineno);
        std::string a;
        std::string b;
        words >> a;
        ins.a = parse_operand(a, expected - 1, lineno);
        if (arity(ins.op) == 2) {
            words >> b;
            ins.b = parse_operand(b, expected - 1, lineno);
        }
        if (words >> rest) {
            throw InvalidInput("slp line " + std::to_string(lineno) + ": too many operands");
        }
        program.instructions.push_back(ins);
    }
    if (!have_result) {
        throw InvalidInput("slp program has no result line");
    }
    return program;
}

} // namespace ordstat

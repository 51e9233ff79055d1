#include "ordstat/expr_text.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "ordstat/errors.hpp"
#include "ordstat/format.hpp"

namespace ordstat {

namespace {

void render_infix(const ExprNode& e, std::string& out, bool inside_abs) {
    switch (e.op) {
    case ExprOp::var:
        out += 'x';
        out += std::to_string(e.var_index);
        return;
    case ExprOp::constant:
        out += format_real(e.value);
        return;
    case ExprOp::add:
    case ExprOp::sub:
        if (!inside_abs) {
            out += '(';
        }
        render_infix(*e.lhs, out, false);
        out += e.op == ExprOp::add ? " + " : " - ";
        render_infix(*e.rhs, out, false);
        if (!inside_abs) {
            out += ')';
        }
        return;
    case ExprOp::abs:
        out += '|';
        render_infix(*e.lhs, out, true);
        out += '|';
        return;
    case ExprOp::halve:
        render_infix(*e.lhs, out, false);
        out += "/2";
        return;
    case ExprOp::min:
    case ExprOp::max:
        out += op_name(e.op);
        out += '(';
        render_infix(*e.lhs, out, false);
        out += ", ";
        render_infix(*e.rhs, out, false);
        out += ')';
        return;
    }
}

void render_sexpr(const ExprNode& e, std::string& out) {
    out += '(';
    out += op_name(e.op);
    out += ' ';
    switch (e.op) {
    case ExprOp::var: out += std::to_string(e.var_index); break;
    case ExprOp::constant: out += format_real(e.value); break;
    default:
        render_sexpr(*e.lhs, out);
        if (e.rhs) {
            out += ' ';
            render_sexpr(*e.rhs, out);
        }
    }
    out += ')';
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse_infix() {
        ExprPtr e = infix_expr();
        finish();
        return e;
    }

    ExprPtr parse_sexpr() {
        ExprPtr e = sexpr();
        finish();
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InvalidInput("expression parse error at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c) {
        if (peek() != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    bool accept_word(std::string_view w) {
        skip_ws();
        if (text_.substr(pos_, w.size()) == w) {
            pos_ += w.size();
            return true;
        }
        return false;
    }

    void finish() {
        if (peek() != '\0') {
            fail("trailing characters");
        }
    }

    std::size_t index_literal() {
        skip_ws();
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (ec != std::errc{} || v == 0) {
            fail("expected a positive variable index");
        }
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return v;
    }

    double number_literal() {
        skip_ws();
        double v = 0;
        const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v,
                                               std::chars_format::general);
        if (ec != std::errc{}) {
            fail("expected a number");
        }
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return v;
    }

    ExprPtr infix_expr() {
        ExprPtr acc = infix_term();
        for (;;) {
            const char c = peek();
            if (c == '+') {
                ++pos_;
                acc = expr::add(std::move(acc), infix_term());
            } else if (c == '-') {
                ++pos_;
                acc = expr::sub(std::move(acc), infix_term());
            } else {
                return acc;
            }
        }
    }

    ExprPtr infix_term() {
        ExprPtr acc = infix_atom();
        while (peek() == '/') {
            ++pos_;
            if (number_literal() != 2) {
                fail("only division by 2 is supported");
            }
            acc = expr::halve(std::move(acc));
        }
        return acc;
    }

    ExprPtr infix_atom() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            ExprPtr e = infix_expr();
            expect(')');
            return e;
        }
        if (c == '|') {
            ++pos_;
            ExprPtr e = infix_expr();
            expect('|');
            return expr::abs(std::move(e));
        }
        if (c == 'x') {
            ++pos_;
            return expr::var(index_literal());
        }
        for (const bool is_min : {true, false}) {
            if (accept_word(is_min ? "min" : "max")) {
                expect('(');
                ExprPtr l = infix_expr();
                expect(',');
                ExprPtr r = infix_expr();
                expect(')');
                return is_min ? expr::min(std::move(l), std::move(r)) : expr::max(std::move(l), std::move(r));
            }
        }
        if (c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
            return expr::constant(number_literal());
        }
        fail("expected an operand");
    }

    ExprPtr sexpr() {
        expect('(');
        ExprPtr e;
        if (accept_word("var")) {
            e = expr::var(index_literal());
        } else if (accept_word("const")) {
            e = expr::constant(number_literal());
        } else if (accept_word("add")) {
            ExprPtr l = sexpr();
            e = expr::add(std::move(l), sexpr());
        } else if (accept_word("sub")) {
            ExprPtr l = sexpr();
            e = expr::sub(std::move(l), sexpr());
        } else if (accept_word("abs")) {
            e = expr::abs(sexpr());
        } else if (accept_word("halve")) {
            e = expr::halve(sexpr());
        } else if (accept_word("min")) {
            ExprPtr l = sexpr();
            e = expr::min(std::move(l), sexpr());
        } else if (accept_word("max")) {
            ExprPtr l = sexpr();
            e = expr::max(std::move(l), sexpr());
        } else {
            fail("unknown operator");
        }
        expect(')');
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

std::string emit_text(const ExprPtr& e, TextSyntax syntax) {
    std::string out;
    if (syntax == TextSyntax::infix) {
        render_infix(*e, out, false);
    } else {
        render_sexpr(*e, out);
    }
    return out;
}

ExprPtr parse_text(std::string_view text, TextSyntax syntax) {
    Parser p(text);
    return syntax == TextSyntax::infix ? p.parse_infix() : p.parse_sexpr();
}

} // namespace ordstat

#include "ordstat/expr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ordstat/errors.hpp"
#include "ordstat/expr_text.hpp"
#include "ordstat/selection.hpp"

namespace ordstat {

std::string_view op_name(ExprOp op) noexcept {
    switch (op) {
    case ExprOp::var: return "var";
    case ExprOp::constant: return "const";
    case ExprOp::add: return "add";
    case ExprOp::sub: return "sub";
    case ExprOp::abs: return "abs";
    case ExprOp::halve: return "halve";
    case ExprOp::min: return "min";
    case ExprOp::max: return "max";
    }
    return "?";
}

namespace expr {

namespace {
ExprPtr make(ExprOp op, ExprPtr l, ExprPtr r) {
    if (!l || (arity(op) == 2 && !r)) {
        throw InvalidInput(std::string("missing operand for ") + std::string(op_name(op)));
    }
    return std::make_shared<const ExprNode>(ExprNode{op, 0, 0, std::move(l), std::move(r)});
}
} // namespace

ExprPtr var(std::size_t index) {
    if (index == 0) {
        throw IndexError("variable indices are 1-based");
    }
    return std::make_shared<const ExprNode>(ExprNode{ExprOp::var, index, 0, nullptr, nullptr});
}

ExprPtr constant(double value) {
    if (!std::isfinite(value)) {
        throw InvalidInput("constants must be finite");
    }
    return std::make_shared<const ExprNode>(ExprNode{ExprOp::constant, 0, value, nullptr, nullptr});
}

ExprPtr add(ExprPtr l, ExprPtr r) { return make(ExprOp::add, std::move(l), std::move(r)); }
ExprPtr sub(ExprPtr l, ExprPtr r) { return make(ExprOp::sub, std::move(l), std::move(r)); }
ExprPtr abs(ExprPtr c) { return make(ExprOp::abs, std::move(c), nullptr); }
ExprPtr halve(ExprPtr c) { return make(ExprOp::halve, std::move(c), nullptr); }
ExprPtr min(ExprPtr l, ExprPtr r) { return make(ExprOp::min, std::move(l), std::move(r)); }
ExprPtr max(ExprPtr l, ExprPtr r) { return make(ExprOp::max, std::move(l), std::move(r)); }

} // namespace expr

namespace {

ExprPtr build_recursive(std::span<const std::size_t> vars, std::size_t rank) {
    if (rank == 1) {
        ExprPtr acc = expr::var(vars[0]);
        for (std::size_t k = 1; k < vars.size(); ++k) {
            acc = expr::min(std::move(acc), expr::var(vars[k]));
        }
        return acc;
    }
    std::vector<std::size_t> sub(vars.begin() + 1, vars.end());
    const std::size_t last = vars.size() - rank + 2;
    ExprPtr acc = build_recursive(sub, rank - 1);
    for (std::size_t j = 2; j <= last; ++j) {
        sub[j - 2] = vars[j - 2];
        acc = expr::max(std::move(acc), build_recursive(sub, rank - 1));
    }
    return acc;
}

class Lowering {
public:
    ExprPtr run(const ExprPtr& e) {
        if (auto it = done_.find(e.get()); it != done_.end()) {
            return it->second;
        }
        ExprPtr out;
        switch (e->op) {
        case ExprOp::var:
        case ExprOp::constant:
            out = e;
            break;
        case ExprOp::abs:
        case ExprOp::halve: {
            ExprPtr c = run(e->lhs);
            out = c == e->lhs ? e : std::make_shared<const ExprNode>(ExprNode{e->op, 0, 0, c, nullptr});
            break;
        }
        case ExprOp::add:
        case ExprOp::sub: {
            ExprPtr l = run(e->lhs);
            ExprPtr r = run(e->rhs);
            out = (l == e->lhs && r == e->rhs) ? e
                                                : std::make_shared<const ExprNode>(ExprNode{e->op, 0, 0, l, r});
            break;
        }
        case ExprOp::min:
        case ExprOp::max: {
            ExprPtr l = run(e->lhs);
            ExprPtr r = run(e->rhs);
            ExprPtr spread = expr::abs(expr::sub(l, r));
            ExprPtr sum = expr::add(l, r);
            out = expr::halve(e->op == ExprOp::min ? expr::sub(sum, spread) : expr::add(sum, spread));
            break;
        }
        }
        done_.emplace(e.get(), out);
        return out;
    }

private:
    std::unordered_map<const ExprNode*, ExprPtr> done_;
};

struct InternKey {
    ExprOp op;
    std::size_t var_index;
    std::uint64_t value_bits;
    std::size_t lhs;
    std::size_t rhs;
    friend bool operator==(const InternKey&, const InternKey&) = default;
};

struct InternKeyHash {
    std::size_t operator()(const InternKey& k) const noexcept {
        std::size_t h = static_cast<std::size_t>(k.op);
        auto mix = [&](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
        mix(k.var_index);
        mix(static_cast<std::size_t>(k.value_bits));
        mix(k.lhs);
        mix(k.rhs);
        return h;
    }
};

class Interner {
public:
    // Returns the id of the canonical node for e; ids start at 1, 0 = none.
    std::size_t run(const ExprPtr& e) {
        if (auto it = seen_.find(e.get()); it != seen_.end()) {
            return it->second;
        }
        const std::size_t l = e->lhs ? run(e->lhs) : 0;
        const std::size_t r = e->rhs ? run(e->rhs) : 0;
        const InternKey key{e->op, e->var_index,
                            e->op == ExprOp::constant ? std::bit_cast<std::uint64_t>(e->value) : 0, l, r};
        std::size_t id;
        if (auto it = table_.find(key); it != table_.end()) {
            id = it->second;
        } else {
            ExprPtr node = (l == 0 || nodes_[l - 1] == e->lhs) && (r == 0 || nodes_[r - 1] == e->rhs)
                               ? e
                               : std::make_shared<const ExprNode>(ExprNode{
                                     e->op, e->var_index, e->value, l ? nodes_[l - 1] : nullptr,
                                     r ? nodes_[r - 1] : nullptr});
            nodes_.push_back(std::move(node));
            id = nodes_.size();
            table_.emplace(key, id);
        }
        seen_.emplace(e.get(), id);
        return id;
    }

    const ExprPtr& node(std::size_t id) const { return nodes_[id - 1]; }
    std::size_t distinct() const { return nodes_.size(); }

private:
    std::unordered_map<const ExprNode*, std::size_t> seen_;
    std::unordered_map<InternKey, std::size_t, InternKeyHash> table_;
    std::vector<ExprPtr> nodes_;
};

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

class Measurer {
public:
    void run(const ExprPtr& e) {
        if (memo_.contains(e.get())) {
            return;
        }
        Info info{1, 1};
        for (const ExprPtr* c : {&e->lhs, &e->rhs}) {
            if (!*c) {
                continue;
            }
            run(*c);
            const Info& ci = memo_.at(c->get());
            info.tree = info.tree > saturated - ci.tree ? saturated : info.tree + ci.tree;
            info.depth = std::max(info.depth, ci.depth + 1);
        }
        memo_.emplace(e.get(), info);
    }

    ExprMetrics metrics(const ExprPtr& e) const {
        const Info& i = memo_.at(e.get());
        return {i.tree, memo_.size(), i.depth};
    }

private:
    struct Info {
        std::uint64_t tree;
        std::uint64_t depth;
    };
    std::unordered_map<const ExprNode*, Info> memo_;
};

class Evaluator {
public:
    explicit Evaluator(std::span<const double> values) : values_(values) {}

    double run(const ExprPtr& e) {
        if (auto it = memo_.find(e.get()); it != memo_.end()) {
            return it->second;
        }
        double v = 0;
        switch (e->op) {
        case ExprOp::var:
            if (e->var_index < 1 || e->var_index > values_.size()) {
                throw EvalError("no value assigned to x" + std::to_string(e->var_index));
            }
            v = values_[e->var_index - 1];
            break;
        case ExprOp::constant: v = e->value; break;
        case ExprOp::add: v = run(e->lhs) + run(e->rhs); break;
        case ExprOp::sub: v = run(e->lhs) - run(e->rhs); break;
        case ExprOp::abs: v = std::fabs(run(e->lhs)); break;
        case ExprOp::halve: v = run(e->lhs) / 2; break;
        case ExprOp::min: {
            const double l = run(e->lhs);
            const double r = run(e->rhs);
            v = r < l ? r : l;
            break;
        }
        case ExprOp::max: {
            const double l = run(e->lhs);
            const double r = run(e->rhs);
            v = r > l ? r : l;
            break;
        }
        }
        if (!std::isfinite(v)) {
            std::string where = emit_text(e, TextSyntax::sexpr);
            if (where.size() > 120) {
                where = where.substr(0, 117) + "...";
            }
            throw EvalError("non-finite intermediate at " + where);
        }
        memo_.emplace(e.get(), v);
        return v;
    }

private:
    std::span<const double> values_;
    std::unordered_map<const ExprNode*, double> memo_;
};

bool equal_recursive(const ExprNode* a, const ExprNode* b,
                     std::set<std::pair<const ExprNode*, const ExprNode*>>& known) {
    if (a == b) {
        return true;
    }
    if (!a || !b) {
        return false;
    }
    if (known.contains({a, b})) {
        return true;
    }
    if (a->op != b->op) {
        return false;
    }
    if (a->op == ExprOp::var && a->var_index != b->var_index) {
        return false;
    }
    if (a->op == ExprOp::constant &&
        std::bit_cast<std::uint64_t>(a->value) != std::bit_cast<std::uint64_t>(b->value)) {
        return false;
    }
    if (!equal_recursive(a->lhs.get(), b->lhs.get(), known) ||
        !equal_recursive(a->rhs.get(), b->rhs.get(), known)) {
        return false;
    }
    known.insert({a, b});
    return true;
}

} // namespace

ExprPtr build_selection_expr(std::size_t length, Rank n, ExprForm form, Budget budget) {
    check_rank(n, length);
    const std::uint64_t leaves = naive_base_call_bound(length, n);
    if (leaves > budget.max_calls) {
        throw BudgetError("formula for rank " + std::to_string(n.value) + " of " + std::to_string(length) +
                          " terms needs " + std::to_string(leaves) + " min chains, budget is " +
                          std::to_string(budget.max_calls));
    }
    std::vector<std::size_t> vars(length);
    for (std::size_t i = 0; i < length; ++i) {
        vars[i] = i + 1;
    }
    ExprPtr e = build_recursive(vars, n.value);
    return form == ExprForm::arithmetic ? lower_minmax_to_arith(e) : e;
}

ExprPtr lower_minmax_to_arith(const ExprPtr& e) {
    Lowering lowering;
    return lowering.run(e);
}

std::pair<ExprPtr, ExprMetrics> cse(const ExprPtr& e) {
    Interner interner;
    const std::size_t root = interner.run(e);
    ExprPtr shared = interner.node(root);
    ExprMetrics m = measure(e);
    m.node_count_dag = interner.distinct();
    return {std::move(shared), m};
}

ExprMetrics measure(const ExprPtr& e) {
    Measurer m;
    m.run(e);
    return m.metrics(e);
}

double eval_expr(const ExprPtr& e, std::span<const double> values) {
    Evaluator ev(values);
    return ev.run(e);
}

bool contains_minmax(const ExprPtr& e) {
    std::unordered_set<const ExprNode*> seen;
    std::vector<const ExprNode*> stack{e.get()};
    while (!stack.empty()) {
        const ExprNode* n = stack.back();
        stack.pop_back();
        if (!n || !seen.insert(n).second) {
            continue;
        }
        if (n->op == ExprOp::min || n->op == ExprOp::max) {
            return true;
        }
        stack.push_back(n->lhs.get());
        stack.push_back(n->rhs.get());
    }
    return false;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    std::set<std::pair<const ExprNode*, const ExprNode*>> known;
    return equal_recursive(a.get(), b.get(), known);
}

} // namespace ordstat

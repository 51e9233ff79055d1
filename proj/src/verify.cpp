#include "ordstat/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

#include "json.hpp"

#include "ordstat/errors.hpp"
#include "ordstat/expr.hpp"
#include "ordstat/selection.hpp"
#include "ordstat/slp.hpp"
#include "random.hpp"

namespace ordstat {

double oracle_select(Rank n, const RealSequence& seq) {
    check_rank(n, seq.size());
    std::vector<double> sorted(seq.values().begin(), seq.values().end());
    std::sort(sorted.begin(), sorted.end());
    return sorted[n.value - 1];
}

double oracle_median(const RealSequence& seq) {
    std::vector<double> sorted(seq.values().begin(), seq.values().end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    return n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2;
}

void VerifyReport::merge(const VerifyReport& other, std::size_t max_recorded) {
    cases_run += other.cases_run;
    failure_count += other.failure_count;
    for (const VerifyFailure& f : other.failures) {
        if (failures.size() >= max_recorded) {
            break;
        }
        failures.push_back(f);
    }
}

namespace {

// Compiled formulas for one sequence length, indexed by rank - 1. Empty
// programs mark ranks whose formula exceeds the recursion budget.
struct LengthPrograms {
    std::vector<std::optional<CompiledProgram>> minmax;
    std::vector<std::optional<CompiledProgram>> arithmetic;
};

class CaseChecker {
public:
    explicit CaseChecker(const VerifyPlan& plan) : plan_(plan), programs_(plan.max_n + 1) {}

    // Compiles formulas for every length up front; required before sharing
    // the checker across threads.
    void prepare_all() {
        for (std::size_t len = 1; len <= plan_.max_n; ++len) {
            programs_for(len);
        }
    }

    void check(const std::vector<double>& values, VerifyReport& report) {
        const RealSequence seq(values);
        const std::size_t len = values.size();
        std::vector<double> sorted(values);
        std::sort(sorted.begin(), sorted.end());
        double scale = 0;
        for (double v : values) {
            scale = std::max(scale, std::fabs(v));
        }
        const LengthPrograms& progs = programs_for(len);

        auto exact = [&](std::size_t rank, double expected, double actual, const char* mode) {
            if (actual != expected) {
                fail(report, values, rank, expected, actual, mode);
            }
        };

        for (std::size_t rank = 1; rank <= len; ++rank) {
            ++report.cases_run;
            const double expected = sorted[rank - 1];
            const Rank n{rank};

            if (naive_base_call_bound(len, n) <= plan_.budget.max_calls) {
                EvalStats stats;
                const Rank asked = plan_.inject_fault ? Rank{std::min(rank + 1, len)} : n;
                exact(rank, expected, select_naive(asked, seq, stats, plan_.budget), "naive");
            }
            EvalStats memo_stats;
            exact(rank, expected, select_memo(n, seq, memo_stats, plan_.budget), "memo");
            if (fullrange_state_count(len, n) <= plan_.budget.max_calls) {
                exact(rank, expected, select_fullrange(n, seq, plan_.budget), "fullrange");
            }
            if (const auto& p = progs.minmax[rank - 1]) {
                exact(rank, expected, run_program(*p, values), "expr_minmax");
            }
            if (const auto& p = progs.arithmetic[rank - 1]) {
                const double actual = run_program(*p, values);
                if (!(std::fabs(actual - expected) <= plan_.tolerance * scale)) {
                    fail(report, values, rank, expected, actual, "expr_arithmetic");
                }
            }
        }
        exact(0, oracle_median(seq), median(seq, SelectMode::memo, plan_.budget), "median");
    }

private:
    void fail(VerifyReport& report, const std::vector<double>& values, std::size_t rank, double expected,
              double actual, const char* mode) const {
        ++report.failure_count;
        if (report.failures.size() < plan_.max_recorded_failures) {
            report.failures.push_back({values, rank, expected, actual, mode});
        }
    }

    const LengthPrograms& programs_for(std::size_t len) {
        LengthPrograms& p = programs_[len];
        if (!p.minmax.empty()) {
            return p;
        }
        p.minmax.resize(len);
        p.arithmetic.resize(len);
        for (std::size_t rank = 1; rank <= len; ++rank) {
            const Rank n{rank};
            if (naive_base_call_bound(len, n) > plan_.budget.max_calls) {
                continue;
            }
            const ExprPtr e = build_selection_expr(len, n, ExprForm::minmax, plan_.budget);
            p.minmax[rank - 1] = compile_program(e);
            if (plan_.check_arithmetic) {
                p.arithmetic[rank - 1] = emit_slp(cse(lower_minmax_to_arith(e)).first);
            }
        }
        return p;
    }

    const VerifyPlan& plan_;
    std::vector<LengthPrograms> programs_;
};

void validate(const VerifyPlan& plan) {
    if (plan.max_n < 1) {
        throw InvalidInput("max_n must be at least 1");
    }
    if (!(plan.tolerance >= 0)) {
        throw InvalidInput("tolerance must be non-negative");
    }
}

struct Chunk {
    std::size_t length;
    std::uint64_t begin;
    std::uint64_t end;
};

constexpr std::uint64_t chunk_size = 2048;

} // namespace

VerifyReport exhaustive_verify(const VerifyPlan& plan) {
    validate(plan);
    if (plan.alphabet.empty()) {
        throw InvalidInput("alphabet must be non-empty");
    }
    for (double a : plan.alphabet) {
        if (!std::isfinite(a)) {
            throw InvalidInput("alphabet values must be finite");
        }
    }
    const std::uint64_t base = plan.alphabet.size();
    std::uint64_t tuples = 1;
    for (std::size_t i = 0; i < plan.max_n; ++i) {
        if (tuples > plan.case_budget / base) {
            throw BudgetError("exhaustive enumeration exceeds the case budget of " +
                              std::to_string(plan.case_budget));
        }
        tuples *= base;
    }
    if (tuples > plan.case_budget / plan.max_n) {
        throw BudgetError("exhaustive enumeration exceeds the case budget of " + std::to_string(plan.case_budget));
    }

    std::vector<Chunk> chunks;
    std::uint64_t count = 1;
    for (std::size_t len = 1; len <= plan.max_n; ++len) {
        count *= base;
        for (std::uint64_t b = 0; b < count; b += chunk_size) {
            chunks.push_back({len, b, std::min(count, b + chunk_size)});
        }
    }

    CaseChecker checker(plan);
    checker.prepare_all();

    std::vector<VerifyReport> shards(chunks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        std::vector<double> values;
        for (std::size_t c = next.fetch_add(1); c < chunks.size(); c = next.fetch_add(1)) {
            const Chunk& chunk = chunks[c];
            values.resize(chunk.length);
            for (std::uint64_t code = chunk.begin; code < chunk.end; ++code) {
                std::uint64_t rest = code;
                for (std::size_t k = 0; k < chunk.length; ++k) {
                    values[k] = plan.alphabet[rest % base];
                    rest /= base;
                }
                checker.check(values, shards[c]);
            }
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(plan.workers, chunks.size()));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) {
            pool.emplace_back(work);
        }
        work();
    }

    VerifyReport report;
    for (const VerifyReport& shard : shards) {
        report.merge(shard, plan.max_recorded_failures);
    }
    return report;
}

VerifyReport random_verify(const VerifyPlan& plan) {
    validate(plan);
    if (plan.random_trials < 1) {
        throw InvalidInput("random_trials must be at least 1");
    }
    detail::SeededRng rng(plan.seed);
    CaseChecker checker(plan);
    VerifyReport report;
    std::vector<double> values;
    for (std::uint64_t trial = 0; trial < plan.random_trials; ++trial) {
        const std::size_t len = 1 + static_cast<std::size_t>(rng.below(plan.max_n));
        values.resize(len);
        const std::uint64_t pattern = rng.below(5);
        switch (pattern) {
        case 0: // uniform
            for (double& v : values) {
                v = rng.uniform(-1e6, 1e6);
            }
            break;
        case 1: // sorted
        case 2: { // reverse-sorted
            for (double& v : values) {
                v = rng.uniform(-1e6, 1e6);
            }
            std::sort(values.begin(), values.end());
            if (pattern == 2) {
                std::reverse(values.begin(), values.end());
            }
            break;
        }
        case 3: // all equal
            std::fill(values.begin(), values.end(), rng.uniform(-1e6, 1e6));
            break;
        default: { // pairs one ulp apart, shuffled
            for (std::size_t k = 0; k < len; k += 2) {
                values[k] = rng.uniform(-1e6, 1e6);
                if (k + 1 < len) {
                    values[k + 1] = std::nextafter(values[k], std::numeric_limits<double>::infinity());
                }
            }
            for (std::size_t k = len; k > 1; --k) {
                std::swap(values[k - 1], values[rng.below(k)]);
            }
        }
        }
        checker.check(values, report);
    }
    return report;
}

std::string report_json(const VerifyReport& report) {
    nlohmann::ordered_json j;
    j["cases_run"] = report.cases_run;
    j["failure_count"] = report.failure_count;
    j["passed"] = report.passed();
    auto failures = nlohmann::ordered_json::array();
    for (const VerifyFailure& f : report.failures) {
        nlohmann::ordered_json item;
        item["input"] = f.input;
        item["rank"] = f.rank;
        item["expected"] = f.expected;
        item["actual"] = f.actual;
        item["mode"] = f.mode;
        failures.push_back(std::move(item));
    }
    j["failures"] = std::move(failures);
    return j.dump(2);
}

} // namespace ordstat

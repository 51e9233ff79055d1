#include "ordstat/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "json.hpp"

#include "ordstat/errors.hpp"
#include "ordstat/expr.hpp"
#include "ordstat/format.hpp"
#include "ordstat/selection.hpp"
#include "ordstat/slp.hpp"
#include "ordstat/verify.hpp"
#include "random.hpp"

namespace ordstat {

namespace {

using Clock = std::chrono::steady_clock;

double median_of(std::vector<double> xs) {
    if (xs.empty()) {
        return 0;
    }
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size() / 2;
    return xs.size() % 2 == 1 ? xs[m] : (xs[m - 1] + xs[m]) / 2;
}

// Median over `reps` timed runs of f, in seconds.
double time_median(std::size_t reps, const std::function<void()>& f) {
    std::vector<double> samples;
    samples.reserve(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        f();
        samples.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
    }
    return median_of(std::move(samples));
}

RealSequence counting_input(std::size_t length) {
    std::vector<double> xs(length);
    for (std::size_t k = 0; k < length; ++k) {
        xs[k] = static_cast<double>((k * 7 + 3) % (length + 1));
    }
    return RealSequence(std::move(xs));
}

// Keeps the optimiser from discarding timed results.
volatile double sink = 0;

} // namespace

std::uint64_t count_calls(std::size_t length, Rank n, Budget budget) {
    EvalStats stats;
    (void)select_naive(n, counting_input(length), stats, budget);
    return stats.base_case_calls;
}

std::vector<GrowthRow> growth_table(std::size_t max_length, const BenchOptions& options) {
    if (max_length < 1) {
        throw InvalidInput("max_N must be at least 1");
    }
    std::vector<GrowthRow> rows;
    for (std::size_t len = 1; len <= max_length; ++len) {
        const RealSequence seq = counting_input(len);
        for (std::size_t rank = 1; rank <= len; ++rank) {
            const Rank n{rank};
            GrowthRow row;
            row.predicted = naive_base_call_bound(len, n);

            EvalStats naive_stats;
            EvalStats memo_stats;
            const double a = select_naive(n, seq, naive_stats, options.budget);
            const double b = select_memo(n, seq, memo_stats, options.budget);
            if (a != b || a != oracle_select(n, seq)) {
                throw Error("naive and memoized selection disagree at N=" + std::to_string(len) +
                            ", n=" + std::to_string(rank));
            }

            const ExprPtr arith = build_selection_expr(len, n, ExprForm::arithmetic, options.budget);
            const ExprMetrics metrics = cse(arith).second;

            row.naive = {len, rank, "naive", naive_stats.base_case_calls, naive_stats.memo_hits,
                         metrics.node_count_tree, metrics.node_count_dag, 0};
            row.memo = {len, rank, "memo", memo_stats.base_case_calls, memo_stats.memo_hits,
                        metrics.node_count_tree, metrics.node_count_dag, 0};
            if (options.timing) {
                row.naive.wall_time_s = time_median(options.repetitions, [&] {
                    EvalStats s;
                    sink = select_naive(n, seq, s, options.budget);
                });
                row.memo.wall_time_s = time_median(options.repetitions, [&] {
                    EvalStats s;
                    sink = select_memo(n, seq, s, options.budget);
                });
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<BenchRecord> compare_wallclock(std::size_t length, std::size_t trials, std::uint64_t seed,
                                           const BenchOptions& options, std::optional<Rank> rank) {
    if (length < 1 || trials < 1) {
        throw InvalidInput("compare_wallclock needs N >= 1 and trials >= 1");
    }
    const Rank n = rank.value_or(Rank{(length + 1) / 2});
    check_rank(n, length);

    detail::SeededRng rng(seed);
    std::vector<RealSequence> inputs;
    inputs.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<double> xs(length);
        for (double& x : xs) {
            x = rng.uniform(-1e6, 1e6);
        }
        inputs.emplace_back(std::move(xs));
    }

    const auto [shared, metrics] = cse(build_selection_expr(length, n, ExprForm::arithmetic, options.budget));
    const CompiledProgram program = emit_slp(shared);

    EvalStats memo_stats;
    for (const RealSequence& seq : inputs) {
        EvalStats s;
        const double want = oracle_select(n, seq);
        const double memo = select_memo(n, seq, s, options.budget);
        const double compiled = run_program(program, seq.values());
        double scale = 0;
        for (double x : seq.values()) {
            scale = std::max(scale, std::fabs(x));
        }
        if (memo != want || std::fabs(compiled - want) > 1e-9 * scale) {
            throw Error("benchmark modes disagree on a seeded input");
        }
        memo_stats = s;
    }

    BenchRecord memo{length, n.value, "memo", memo_stats.base_case_calls, memo_stats.memo_hits, 0, 0, 0};
    BenchRecord expr{length, n.value, "expr", 0, 0, metrics.node_count_tree, metrics.node_count_dag, 0};
    BenchRecord oracle{length, n.value, "oracle", 0, 0, 0, 0, 0};

    if (options.timing) {
        std::vector<double> memo_t;
        std::vector<double> expr_t;
        std::vector<double> oracle_t;
        for (const RealSequence& seq : inputs) {
            memo_t.push_back(time_median(options.repetitions, [&] {
                EvalStats s;
                sink = select_memo(n, seq, s, options.budget);
            }));
            expr_t.push_back(time_median(options.repetitions, [&] { sink = run_program(program, seq.values()); }));
            oracle_t.push_back(time_median(options.repetitions, [&] { sink = oracle_select(n, seq); }));
        }
        memo.wall_time_s = median_of(std::move(memo_t));
        expr.wall_time_s = median_of(std::move(expr_t));
        oracle.wall_time_s = median_of(std::move(oracle_t));
    }
    return {memo, expr, oracle};
}

std::string records_csv(std::span<const BenchRecord> records) {
    std::string out = bench_csv_header;
    out += '\n';
    for (const BenchRecord& r : records) {
        out += std::to_string(r.N) + ',' + std::to_string(r.n) + ',' + r.mode + ',' +
               std::to_string(r.base_case_calls) + ',' + std::to_string(r.memo_hits) + ',' +
               std::to_string(r.tree_nodes) + ',' + std::to_string(r.dag_nodes) + ',' +
               format_real(r.wall_time_s) + '\n';
    }
    return out;
}

std::string records_json(std::span<const BenchRecord> records) {
    auto arr = nlohmann::ordered_json::array();
    for (const BenchRecord& r : records) {
        nlohmann::ordered_json j;
        j["N"] = r.N;
        j["n"] = r.n;
        j["mode"] = r.mode;
        j["base_case_calls"] = r.base_case_calls;
        j["memo_hits"] = r.memo_hits;
        j["tree_nodes"] = r.tree_nodes;
        j["dag_nodes"] = r.dag_nodes;
        j["wall_time_s"] = r.wall_time_s;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

} // namespace ordstat

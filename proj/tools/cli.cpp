#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ordstat/bench.hpp"
#include "ordstat/errors.hpp"
#include "ordstat/expr.hpp"
#include "ordstat/expr_text.hpp"
#include "ordstat/format.hpp"
#include "ordstat/input.hpp"
#include "ordstat/selection.hpp"
#include "ordstat/slp.hpp"
#include "ordstat/verify.hpp"

namespace ordstat::cli {

namespace {

struct Config {
    std::string input = "-";
    std::size_t rank = 0;
    std::size_t length = 0;
    std::string select_mode = "memo";
    std::string median_mode = "memo";
    std::string bench_mode = "naive";
    std::string form = "minmax";
    std::string syntax = "infix";
    std::string text_format = "text";
    std::string bench_format = "csv";
    std::optional<std::uint64_t> budget;

    // verify
    bool exhaustive = false;
    bool random = false;
    std::optional<std::size_t> max_n;
    std::vector<double> alphabet{0, 1, 2, 3};
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;
    std::size_t jobs = 1;
    std::uint64_t case_budget = 10'000'000;
    std::size_t max_failures = 100;
    bool inject_fault = false;

    // bench
    bool growth = false;
    bool compare = false;
    bool timing = false;
    std::size_t bench_trials = 100;
    std::size_t reps = 5;
};

Budget resolve_budget(const Config& cfg, const Environment& env) {
    Budget b;
    if (cfg.budget) {
        b.max_calls = *cfg.budget;
    } else if (env.budget) {
        const std::string& s = *env.budget;
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw BudgetError("ORDSTAT_BUDGET must be a non-negative integer, got '" + s + "'");
        }
        b.max_calls = v;
    }
    return b;
}

RealSequence read_input(const std::string& path, std::istream& in) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        std::ifstream file(path);
        if (!file) {
            throw InvalidInput("cannot open input file '" + path + "'");
        }
        text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
    }
    return parse_sequence(text);
}

nlohmann::ordered_json stats_json(const EvalStats& s) {
    nlohmann::ordered_json j;
    j["recursive_calls"] = s.recursive_calls;
    j["base_case_calls"] = s.base_case_calls;
    j["memo_hits"] = s.memo_hits;
    return j;
}

ExprForm parse_form(const std::string& form) {
    return form == "arithmetic" ? ExprForm::arithmetic : ExprForm::minmax;
}

int cmd_select(const Config& cfg, const Environment& env, std::istream& in, std::ostream& out) {
    const RealSequence seq = read_input(cfg.input, in);
    const Budget budget = resolve_budget(cfg, env);
    const Rank n{cfg.rank};
    check_rank(n, seq.size());
    EvalStats stats;
    double value = 0;
    if (cfg.select_mode == "naive") {
        value = select_naive(n, seq, stats, budget);
    } else if (cfg.select_mode == "expr") {
        ExprPtr e = build_selection_expr(seq.size(), n, parse_form(cfg.form), budget);
        if (parse_form(cfg.form) == ExprForm::arithmetic) {
            value = run_program(emit_slp(cse(e).first), seq.values());
        } else {
            value = eval_expr(e, seq.values());
        }
    } else {
        value = select_memo(n, seq, stats, budget);
    }
    if (cfg.text_format == "json") {
        nlohmann::ordered_json j;
        j["n"] = cfg.rank;
        j["value"] = value;
        j["stats"] = stats_json(stats);
        out << j.dump() << '\n';
    } else {
        out << format_real(value) << '\n';
    }
    return ok;
}

int cmd_median(const Config& cfg, const Environment& env, std::istream& in, std::ostream& out) {
    const RealSequence seq = read_input(cfg.input, in);
    const double md = median(seq, cfg.median_mode == "naive" ? SelectMode::naive : SelectMode::memo,
                             resolve_budget(cfg, env));
    if (cfg.text_format == "json") {
        nlohmann::ordered_json j;
        j["N"] = seq.size();
        j["median"] = md;
        out << j.dump() << '\n';
    } else {
        out << format_real(md) << '\n';
    }
    return ok;
}

int cmd_emit(const Config& cfg, const Environment& env, std::ostream& out) {
    const ExprPtr e = build_selection_expr(cfg.length, Rank{cfg.rank}, parse_form(cfg.form), resolve_budget(cfg, env));
    if (cfg.syntax == "slp") {
        const ExprPtr arith = parse_form(cfg.form) == ExprForm::arithmetic ? e : lower_minmax_to_arith(e);
        out << format_slp(emit_slp(cse(arith).first));
    } else {
        out << emit_text(e, cfg.syntax == "sexpr" ? TextSyntax::sexpr : TextSyntax::infix) << '\n';
    }
    return ok;
}

int cmd_verify(const Config& cfg, const Environment& env, std::ostream& out) {
    const bool run_exhaustive = cfg.exhaustive || !cfg.random;
    const bool run_random = cfg.random || !cfg.exhaustive;
    VerifyPlan plan;
    plan.alphabet = cfg.alphabet;
    plan.random_trials = cfg.trials;
    plan.seed = cfg.seed;
    plan.tolerance = cfg.tolerance;
    plan.case_budget = cfg.case_budget;
    plan.budget = resolve_budget(cfg, env);
    plan.workers = cfg.jobs;
    plan.max_recorded_failures = cfg.max_failures;
    plan.inject_fault = cfg.inject_fault;

    VerifyReport report;
    if (run_exhaustive) {
        plan.max_n = cfg.max_n.value_or(7);
        report.merge(exhaustive_verify(plan), plan.max_recorded_failures);
    }
    if (run_random) {
        plan.max_n = cfg.max_n.value_or(9);
        report.merge(random_verify(plan), plan.max_recorded_failures);
    }
    out << report_json(report) << '\n';
    return report.passed() ? ok : verification_failed;
}

int cmd_bench(const Config& cfg, const Environment& env, std::ostream& out, std::ostream& err) {
    BenchOptions options;
    options.timing = cfg.timing;
    options.repetitions = cfg.reps;
    options.budget = resolve_budget(cfg, env);

    std::vector<BenchRecord> records;
    bool deviations = false;
    if (cfg.compare) {
        const std::size_t length = cfg.length == 0 ? 10 : cfg.length;
        const std::optional<Rank> rank = cfg.rank == 0 ? std::nullopt : std::optional<Rank>(Rank{cfg.rank});
        records = compare_wallclock(length, cfg.bench_trials, cfg.seed, options, rank);
    } else {
        for (const GrowthRow& row : growth_table(cfg.max_n.value_or(8), options)) {
            if (!row.law_holds()) {
                deviations = true;
                err << "call-count law deviates at N=" << row.naive.N << ", n=" << row.naive.n << ": counted "
                    << row.naive.base_case_calls << ", expected " << row.predicted << '\n';
            }
            if (cfg.bench_mode != "memo") {
                records.push_back(row.naive);
            }
            if (cfg.bench_mode == "memo" || cfg.bench_mode == "all") {
                records.push_back(row.memo);
            }
        }
    }
    if (cfg.bench_format == "json") {
        out << records_json(records) << '\n';
    } else {
        out << records_csv(records);
    }
    return deviations ? verification_failed : ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const Environment& env) {
    Config cfg;
    CLI::App app{"Order statistics via the recursive max/min selection formula"};
    app.require_subcommand(1);

    auto add_budget = [&](CLI::App* sub) {
        sub->add_option("--budget", cfg.budget, "Recursion budget (overrides ORDSTAT_BUDGET)");
    };

    auto* select = app.add_subcommand("select", "Print the rank-th smallest value (1-based rank)");
    select->add_option("--rank", cfg.rank, "1-based rank n")->required()->check(CLI::PositiveNumber);
    select->add_option("--mode", cfg.select_mode, "naive | memo | expr")
        ->capture_default_str()
        ->check(CLI::IsMember({"naive", "memo", "expr"}));
    select->add_option("--form", cfg.form, "Formula form for --mode expr")
        ->check(CLI::IsMember({"minmax", "arithmetic"}));
    select->add_option("--format", cfg.text_format, "text | json")->capture_default_str()->check(CLI::IsMember({"text", "json"}));
    select->add_option("input", cfg.input, "Input file, or - for stdin");
    add_budget(select);

    auto* med = app.add_subcommand("median", "Print the median");
    med->add_option("--mode", cfg.median_mode, "naive | memo")->capture_default_str()->check(CLI::IsMember({"naive", "memo"}));
    med->add_option("--format", cfg.text_format, "text | json")->capture_default_str()->check(CLI::IsMember({"text", "json"}));
    med->add_option("input", cfg.input, "Input file, or - for stdin");
    add_budget(med);

    auto* emit = app.add_subcommand("emit", "Print the selection formula for N variables");
    emit->add_option("--n", cfg.length, "Number of variables N")->required()->check(CLI::PositiveNumber);
    emit->add_option("--rank", cfg.rank, "1-based rank n")->required()->check(CLI::PositiveNumber);
    emit->add_option("--form", cfg.form, "minmax | arithmetic")->check(CLI::IsMember({"minmax", "arithmetic"}));
    emit->add_option("--syntax", cfg.syntax, "infix | sexpr | slp")->check(CLI::IsMember({"infix", "sexpr", "slp"}));
    add_budget(emit);

    auto* verify = app.add_subcommand("verify", "Cross-check every selector against the sort oracle");
    verify->add_flag("--exhaustive", cfg.exhaustive, "Enumerate all sequences over the alphabet");
    verify->add_flag("--random", cfg.random, "Seeded random sequences");
    verify->add_option("--max-n", cfg.max_n, "Maximum length (default 7 exhaustive, 9 random)")
        ->check(CLI::PositiveNumber);
    verify->add_option("--alphabet", cfg.alphabet, "Values for exhaustive enumeration")->delimiter(',');
    verify->add_option("--trials", cfg.trials, "Random trials")->check(CLI::PositiveNumber);
    verify->add_option("--seed", cfg.seed, "Random seed");
    verify->add_option("--tolerance", cfg.tolerance, "Relative tolerance for the arithmetic form")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--jobs", cfg.jobs, "Worker threads for the exhaustive suite")->check(CLI::PositiveNumber);
    verify->add_option("--case-budget", cfg.case_budget, "Limit on |alphabet|^max_n * max_n");
    verify->add_option("--max-failures", cfg.max_failures, "Failures listed in the report");
    verify->add_flag("--inject-fault", cfg.inject_fault, "Off-by-one naive selector (harness self-test)");
    add_budget(verify);

    auto* bench = app.add_subcommand("bench", "Call-count growth and timing tables");
    auto* growth = bench->add_flag("--growth", cfg.growth, "Growth table over 1 <= n <= N <= max-n (default)");
    auto* compare = bench->add_flag("--compare", cfg.compare, "Time memo, compiled formula and sort oracle");
    bench->add_option("--max-n", cfg.max_n, "Largest N for --growth")->check(CLI::PositiveNumber);
    bench->add_option("--n", cfg.length, "N for --compare (default 10)")->check(CLI::PositiveNumber);
    bench->add_option("--rank", cfg.rank, "Rank for --compare (default lower median)")->check(CLI::PositiveNumber);
    bench->add_option("--trials", cfg.bench_trials, "Inputs for --compare")->capture_default_str()->check(CLI::PositiveNumber);
    bench->add_option("--seed", cfg.seed, "Random seed");
    bench->add_option("--mode", cfg.bench_mode, "Growth rows: naive | memo | all")
        ->capture_default_str()
        ->check(CLI::IsMember({"naive", "memo", "all"}));
    bench->add_option("--format", cfg.bench_format, "csv | json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
    bench->add_flag("--timing", cfg.timing, "Measure wall time (otherwise reported as 0)");
    bench->add_option("--reps", cfg.reps, "Timed repetitions per measurement")->check(CLI::PositiveNumber);
    growth->excludes(compare);
    add_budget(bench);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }

    try {
        if (select->parsed()) {
            return cmd_select(cfg, env, in, out);
        }
        if (med->parsed()) {
            return cmd_median(cfg, env, in, out);
        }
        if (emit->parsed()) {
            return cmd_emit(cfg, env, out);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg, env, out);
        }
        return cmd_bench(cfg, env, out, err);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const RankError& e) {
        err << "error: " << e.what() << '\n';
        return rank_or_budget_error;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << '\n';
        return rank_or_budget_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return verification_failed;
    }
}

} // namespace ordstat::cli

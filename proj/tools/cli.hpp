#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ordstat::cli {

enum ExitCode : int {
    ok = 0,
    verification_failed = 1,
    input_error = 2,
    rank_or_budget_error = 3,
};

struct Environment {
    std::optional<std::string> budget; // ORDSTAT_BUDGET
};

/// Runs one invocation. args[0] is the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const Environment& env = {});

} // namespace ordstat::cli

#ifndef DUALITY_GUARD_CLI_HH
#define DUALITY_GUARD_CLI_HH 1

#include <iosfwd>
#include <string>
#include <vector>

namespace duality
{
    enum ExitCode : int
    {
        exit_success = 0,
        exit_counterexample = 1,
        exit_usage = 2,
        exit_cap = 3
    };

    /// Runs the command-line front end. Reports go to `out` (or --out),
    /// diagnostics to `err`.
    auto run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}

#endif

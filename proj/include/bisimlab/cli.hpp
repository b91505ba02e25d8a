#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bisimlab
{

/// Exit codes of the command-line tool.
enum ExitStatus : int
{
    exit_ok = 0,           // bisimilar, valid, or suite clean
    exit_negative = 1,     // not bisimilar, not a bisimulation, or suite failures
    exit_inconclusive = 2, // bounded verdict
    exit_usage = 64,
    exit_data = 65,
};

/// Runs one command; `args` excludes the program name.
int dispatch( const std::vector<std::string>& args, std::ostream& out, std::ostream& err );

} // namespace bisimlab

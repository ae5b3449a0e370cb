#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ptsdist::cli
{

namespace exit_code
{
constexpr int ok = 0;
constexpr int failure = 1;
constexpr int inconclusive = 2;
constexpr int usage = 64;
constexpr int data = 65;
constexpr int internal = 70; // enumeration cap exceeded or other internal error
} // namespace exit_code

// Runs one command line (without the program name) and returns its exit code.
int cli_main( const std::vector< std::string >& args, std::ostream& out, std::ostream& err );

} // namespace ptsdist::cli

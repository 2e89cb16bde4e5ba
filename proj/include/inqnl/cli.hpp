#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace inqnl {

// Entry point behind the command line tool, separated out so tests can drive
// it without spawning processes. Exit codes: 0 success, 1 semantic failure
// (rejected derivation, countermodel not found, fuzz violations), 2 usage or
// parse errors.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace inqnl

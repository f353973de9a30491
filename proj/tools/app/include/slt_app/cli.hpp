#pragma once

#include <ostream>

namespace slt::app {

/// Parses argv and dispatches to a command. Never throws; every failure is
/// reported on `err` as one line and mapped to an exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slt::app

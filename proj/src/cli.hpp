#pragma once

namespace eqol {

// Command-line entry point shared by the eqolc binary and the CLI tests.
// argv[0] is the program name; returns the process exit code.
int cli_main(int argc, const char* const* argv);

} // namespace eqol

#pragma once

namespace genipm {

// Entry point for the command-line tool. Returns the process exit code:
// 0 on success, 1 on usage errors, 2 on assertion-style failures.
int run_cli(int argc, char** argv);

}  // namespace genipm

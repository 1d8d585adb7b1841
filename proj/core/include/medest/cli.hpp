#pragma once

namespace medest {

/// Full command-line driver (subcommands: analyze, mse, pre, weights,
/// simulate). Returns the process exit code: 0 on success, 1 for usage
/// errors, 2 for data or domain errors.
int run_cli(int argc, const char* const* argv);

}  // namespace medest

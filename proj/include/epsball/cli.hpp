#pragma once

namespace epsball {

// Batch entry point: compute, verify, density, sample, report, plot-data.
// Exit codes: 0 success (verify: no violation beyond tolerance),
// 1 validation failure, 2 unknown subcommand or bad flags, 3 I/O failure.
int run_cli(int argc, const char* const* argv);

} // namespace epsball

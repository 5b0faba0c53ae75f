#pragma once

#include <cstdint>

namespace daestruct {

/// Runs the built-in brute-force oracle suites; returns a process exit code.
int run_selftest(uint64_t seed);

} // namespace daestruct

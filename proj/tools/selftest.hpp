#pragma once

#include <ostream>

namespace bzl::tools {

// Quick oracle suites (a few seconds). Prints one PASS/FAIL line per suite.
bool run_selftest(std::ostream& out);

}  // namespace bzl::tools

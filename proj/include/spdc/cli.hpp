#pragma once

#include <ostream>
#include <string_view>

namespace spdc::cli {

enum ExitCode : int {
  kOk = 0,
  kComputationFailure = 2,
  kGridOrDomainFailure = 3,
  kUsage = 64,
};

std::string_view version();

/// Entry point of the `spdc` tool, separated from main() so tests can drive
/// it with captured streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spdc::cli

#pragma once

#include <exception>
#include <string>

namespace spdc {

// Serial paths are the reference implementations the OpenMP kernels are
// tested against.
enum class Execution { Serial, Parallel };

/// Rethrows `e` as the same spdc error category with `prefix` prepended.
[[noreturn]] void rethrow_with_context(const std::exception_ptr& e, const std::string& prefix);

}  // namespace spdc

#include "spdc/execution.hpp"

#include <stdexcept>

#include "spdc/error.hpp"

namespace spdc {

void rethrow_with_context(const std::exception_ptr& e, const std::string& prefix) {
  try {
    std::rethrow_exception(e);
  } catch (const ParseError& x) {
    throw ParseError(prefix + x.what());
  } catch (const DomainError& x) {
    throw DomainError(prefix + x.what());
  } catch (const SolverError& x) {
    throw SolverError(prefix + x.what());
  } catch (const GridError& x) {
    throw GridError(prefix + x.what());
  } catch (const std::invalid_argument& x) {
    throw std::invalid_argument(prefix + x.what());
  } catch (const std::exception& x) {
    throw Error(prefix + x.what());
  }
}

}  // namespace spdc

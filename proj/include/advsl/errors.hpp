#ifndef ADVSL_ERRORS_HPP
#define ADVSL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace advsl {

// Violated precondition or invariant. CLI maps this to exit code 1.
class ContractViolation : public std::runtime_error {
 public:
  explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

// Malformed file, bad header, dimension mismatch, IO failure. Exit code 2.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace advsl

#endif  // ADVSL_ERRORS_HPP

#ifndef SOFIC_ERRORS_HPP
#define SOFIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sofic {

// Argument outside the mathematical domain of an operation (shape mismatch,
// mismatched primes or groups, non-homomorphisms).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of a construction does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Enumeration or allocation would exceed a configured cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (group files, edge lists, matrices, expressions).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sofic

#endif  // SOFIC_ERRORS_HPP

#ifndef GA_ERRORS_HPP
#define GA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ga {

// A generator failed in a way that a fresh seed can fix (swap budget
// exhausted, pool exhaustion, ...). Dataset assembly retries on these.
class GenerationError : public std::runtime_error {
 public:
  explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

// The automorphism search ran out of its node-expansion budget before
// reaching a verdict. Callers regenerate rather than risk a wrong label.
class UndecidedError : public std::runtime_error {
 public:
  explicit UndecidedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ga

#endif  // GA_ERRORS_HPP

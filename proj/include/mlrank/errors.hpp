#ifndef MLRANK_ERRORS_HPP
#define MLRANK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mlrank {

// Malformed input: bad JSON, dimension mismatch, invalid parameters.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A requested exhaustive computation exceeds the configured budget, or an
// iterative algorithm cannot make progress within its limits.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Violated internal invariant: either a bug or a failed cross-check between
// two independent computations.
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw input_error(what);
}

inline void check_internal(bool cond, const std::string& what) {
  if (!cond) throw internal_error(what);
}

}  // namespace mlrank

#endif

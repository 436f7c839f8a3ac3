#ifndef MLRANK_SELFCHECK_HPP
#define MLRANK_SELFCHECK_HPP

#include <string>
#include <vector>

namespace mlrank {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Deterministic, self-contained verification of the library's headline
// properties on the canonical examples plus small seeded batches.  Returns
// one row per named property.
std::vector<CheckResult> selfcheck_run();

}  // namespace mlrank

#endif

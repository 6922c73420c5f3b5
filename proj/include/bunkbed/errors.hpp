#pragma once

#include <stdexcept>
#include <string>

namespace bunkbed {

// Raised when an enumeration or table would exceed a configured size limit.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Limits can be raised through BUNKBED_GUARDS, e.g. "subset_edges=30,bell=13".
struct Guards {
  int subset_edges = 28;
  int partition_size = 12;
  int colouring_edges = 24;
  int hyperedges = 16;
};

const Guards& guards();
void set_guards(const Guards& g);
Guards parse_guard_overrides(const std::string& text, Guards base);

}  // namespace bunkbed

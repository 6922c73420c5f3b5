#include <cstdlib>
#include <mutex>
#include <sstream>

#include "bunkbed/errors.hpp"

namespace bunkbed {
namespace {

Guards from_environment() {
  Guards g;
  if (const char* env = std::getenv("BUNKBED_GUARDS")) {
    g = parse_guard_overrides(env, g);
  }
  return g;
}

Guards& current() {
  static Guards g = from_environment();
  return g;
}

}  // namespace

const Guards& guards() { return current(); }

void set_guards(const Guards& g) { current() = g; }

Guards parse_guard_overrides(const std::string& text, Guards base) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("guard override needs key=value: " + item);
    std::string key = item.substr(0, eq);
    int value = 0;
    try {
      value = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("guard override value is not an integer: " + item);
    }
    if (value <= 0) throw std::invalid_argument("guard override must be positive: " + item);
    if (key == "subset_edges") base.subset_edges = value;
    else if (key == "bell") base.partition_size = value;
    else if (key == "colouring_edges") base.colouring_edges = value;
    else if (key == "hyperedges") base.hyperedges = value;
    else throw std::invalid_argument("unknown guard key: " + key);
  }
  if (base.partition_size > 16) throw std::invalid_argument("bell guard cannot exceed 16 (packed partition keys)");
  if (base.subset_edges > 40) throw std::invalid_argument("subset_edges guard cannot exceed 40");
  return base;
}

}  // namespace bunkbed

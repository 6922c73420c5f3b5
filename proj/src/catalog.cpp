#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "bunkbed/graph.hpp"

namespace bunkbed {
namespace {

// Bit index of pair (i, j), i < j, in the upper triangle.
int pair_bit(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

bool connected_mask(int n, std::uint32_t mask) {
  std::vector<int> seen(n, 0), stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < n; ++w) {
      if (w != v && !seen[w] && (mask >> pair_bit(n, v, w) & 1U)) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

// Smallest relabelled mask over all permutations (brute force; n <= 6).
std::uint32_t canonical_mask(int n, std::uint32_t mask) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint32_t best = UINT32_MAX;
  do {
    std::uint32_t m = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (mask >> pair_bit(n, i, j) & 1U) m |= 1U << pair_bit(n, perm[i], perm[j]);
      }
    }
    best = std::min(best, m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<Graph> connected_graphs(int n) {
  if (n < 1 || n > 6) throw std::invalid_argument("connected graph generation supports 1 <= n <= 6");
  int pairs = n * (n - 1) / 2;
  std::set<std::pair<int, std::uint32_t>> seen;  // (edge count, canonical mask)
  for (std::uint32_t mask = 0; mask < (1U << pairs); ++mask) {
    if (!connected_mask(n, mask)) continue;
    seen.insert({__builtin_popcount(mask), canonical_mask(n, mask)});
  }
  std::vector<Graph> out;
  for (const auto& [edges, mask] : seen) {
    Graph g(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (mask >> pair_bit(n, i, j) & 1U) g.add_edge(i, j);
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<CatalogEntry> catalog(int max_n, bool include_named) {
  std::vector<CatalogEntry> out;
  for (int n = 1; n <= max_n; ++n) {
    auto gs = connected_graphs(n);
    for (std::size_t i = 0; i < gs.size(); ++i) {
      out.push_back({"conn" + std::to_string(n) + "-" + std::to_string(i), std::move(gs[i])});
    }
  }
  if (include_named) {
    for (const char* name : {"K4", "K23", "C4", "fig4-left", "fig4-right", "fig5-G-1", "fig5-G-2", "fig5-H-1",
                             "fig5-H-2", "gadget-1", "gadget-2", "gadget-3"}) {
      out.push_back({name, named_graph(name).with_unit_weights()});
    }
  }
  return out;
}

}  // namespace bunkbed

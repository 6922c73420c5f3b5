#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include "bunkbed/graph.hpp"
#include "bunkbed/multipoly.hpp"
#include "bunkbed/partition.hpp"

namespace bunkbed {

using PartitionEvent = std::function<bool(const SetPartition&)>;

struct BoundaryTable {
  std::vector<int> marked;
  std::map<std::uint64_t, MultiPoly> entries;  // keyed by SetPartition::code over marked

  SetPartition partition(std::uint64_t code) const { return SetPartition::from_code(marked, code); }
  MultiPoly entry(const SetPartition& pi) const;
  MultiPoly total() const;
  MultiPoly event_weight(const PartitionEvent& event) const;
  Rational probability(const Assignment& point, const PartitionEvent& event) const;
};

// Sum over all edge subsets; edge weights may be rationals or polynomials.
BoundaryTable rc_boundary_table(const Graph& g, const std::vector<int>& marked);
// Uses the edge weights stored on g.
Rational rc_connection_prob(const Graph& g, const Rational& q, int u, int v);

// Subset counts by (marked partition, open edges, components) with edge weights ignored,
// so one pass serves every uniform edge parameter.
class ConnectivityCensus {
 public:
  ConnectivityCensus(const Graph& g, std::vector<int> marked);

  const std::vector<int>& marked() const { return marked_; }
  int vertex_count() const { return n_; }
  int edge_count() const { return m_; }
  // counts[k * (n + 1) + kappa]
  const std::map<std::uint64_t, std::vector<std::uint64_t>>& counts() const { return counts_; }

  std::map<std::uint64_t, Rational> weights(const Rational& p, const Rational& q) const;
  Rational probability(const Rational& p, const Rational& q, const PartitionEvent& event) const;
  BoundaryTable table(const MultiPoly& edge_weight) const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<int> marked_;
  std::map<std::uint64_t, std::vector<std::uint64_t>> counts_;
};

struct BracketQuery {
  std::vector<int> marked;
  SetPartition pattern;
  int extra = 0;
  // Blocks listed in order; marked is their concatenation. {} gives the tree count [.].
  static BracketQuery of(const std::vector<std::vector<int>>& blocks, int extra = 0);
};

class ForestTable {
 public:
  ForestTable() = default;
  ForestTable(int n, std::vector<int> marked) : n_(n), marked_(std::move(marked)) {}

  int vertex_count() const { return n_; }
  const std::vector<int>& marked() const { return marked_; }
  // (partition code over marked, component count) -> sum of edge-weight products
  const std::map<std::pair<std::uint64_t, int>, MultiPoly>& entries() const { return entries_; }
  void add(std::uint64_t code, int components, const MultiPoly& w);

  MultiPoly bracket(const BracketQuery& query) const;
  Integer bracket_count(const BracketQuery& query) const;  // throws unless integral
  // Arboreal gas weight of an event on the marked partition: sum of w * lambda^(n - kappa).
  MultiPoly event_weight(const PartitionEvent& event) const;  // polynomial in l
  Rational probability(const Rational& lambda, const PartitionEvent& event) const;

 private:
  int n_ = 0;
  std::vector<int> marked_;
  std::map<std::pair<std::uint64_t, int>, MultiPoly> entries_;
};

ForestTable forest_table(const Graph& g, const std::vector<int>& marked);

// Calls visit(in_forest, components) once per spanning forest.
void enumerate_forests(const Graph& g, const std::function<void(const std::vector<char>&, int)>& visit);

struct AltCounts {
  std::uint64_t rr = 0;
  std::uint64_t rb = 0;
  std::uint64_t total = 0;
};
// Acyclic colourings tallied by the partition of (u1, v1, u2, v2).
std::map<std::uint64_t, std::uint64_t> alt_colouring_patterns(const Graph& g, const std::vector<int>& posts, int u, int v);
AltCounts alt_colouring_counts(const Graph& g, const std::vector<int>& posts, int u, int v);

struct HypergraphConnection {
  MultiPoly same_layer;   // weight of u1 <-> v1
  MultiPoly cross_layer;  // weight of u1 <-> v2
  MultiPoly partition_function;
  MultiPoly difference() const { return same_layer - cross_layer; }
};
HypergraphConnection hypergraph_connection(const Hypergraph& h, int u, int v);
MultiPoly hypergraph_rc_difference(const Hypergraph& h, int u, int v);

}  // namespace bunkbed

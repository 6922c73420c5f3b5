#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <json.hpp>

#include "bunkbed/graph.hpp"
#include "bunkbed/partition.hpp"
#include "bunkbed/upoly.hpp"

namespace bunkbed {

// Boundary-partition table. Entries carry q only for components that
// never touch the boundary; boundary blocks are paid for at readout.
struct Factor {
  std::vector<int> boundary;
  std::map<std::uint64_t, UPoly> table;  // keyed by SetPartition::code over boundary

  SetPartition partition(std::uint64_t code) const { return SetPartition::from_code(boundary, code); }
  UPoly entry(const SetPartition& pi) const;
  // Sum of entry * q^(blocks): the partition function once nothing else remains.
  UPoly closed_total() const;
  bool operator==(const Factor& o) const;
  nlohmann::json to_json() const;
};

Factor scalar_factor(const UPoly& value);
Factor edge_factor(int u, int v, const Rational& w);
Factor factor_from_graph(const Graph& g, const std::vector<int>& boundary);
Factor gadget_factor(int n, const Rational& p);  // boundary (a, b, c) = (0, 1, n + 2)
Factor relabel(const Factor& f, const std::vector<int>& new_ids);  // new_ids[i] replaces boundary[i]
Factor reorder(const Factor& f, const std::vector<int>& boundary);  // same set, new order

Factor multiply(const Factor& f1, const Factor& f2);
Factor eliminate(const Factor& f, int v);

struct FactorNetwork {
  std::vector<Factor> factors;
  std::vector<int> queries;
};

struct ContractionStats {
  std::vector<int> order;
  int max_boundary = 0;  // largest product boundary formed
};

Factor contract_network(const FactorNetwork& net, ContractionStats* stats = nullptr);
Factor contract_network(const FactorNetwork& net, const std::vector<int>& order, ContractionStats* stats = nullptr);

struct CounterexamplePolys {
  UPoly numerator;           // weight of {1 ~ 10} minus weight of {1 ~ 20}
  UPoly partition_function;  // Z
  Factor query_table;        // over (u1, v1, v2)
  ContractionStats stats;
};
FactorNetwork counterexample_network(int n, const Rational& p);
CounterexamplePolys counterexample_polynomial(int n, const Rational& p);

}  // namespace bunkbed

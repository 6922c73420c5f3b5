#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bunkbed/graph.hpp"
#include "bunkbed/rational.hpp"
#include "bunkbed/report.hpp"

namespace bunkbed {

struct Grid {
  std::vector<Rational> p;
  std::vector<Rational> q;
  std::vector<Rational> lambda;

  // p = 1/10..9/10, q = {1/2, 1, 3/2, 2, 3}, lambda = {1/10, 1/2, 1, 2, 10}
  static Grid defaults();
  nlohmann::json to_json() const;
  static Grid from_json(const nlohmann::json& j);  // missing axes fall back to defaults
};

std::vector<Rational> parse_rational_list(const std::string& text);  // "1/2,1,3/2"

enum class MeasureKind { random_cluster, arboreal, percolation };
std::string measure_name(MeasureKind m);
MeasureKind parse_measure(const std::string& s);

struct BunkbedCheck {
  MeasureKind measure = MeasureKind::random_cluster;
  Grid grid = Grid::defaults();
  std::optional<std::vector<int>> posts;  // nullopt: every vertical present
  std::vector<std::pair<int, int>> pairs;  // empty: every pair u < v
};

// P(u1 ~ v1) - P(u1 ~ v2) on the bunkbed, min over the grid and all pairs.
VerificationReport check_bunkbed(const Graph& g, const std::string& instance, const BunkbedCheck& opts);

// Rational p >= 1 / (1 + 2^(-|E|/2 - 1) q^n), n = vertices of the posts-contracted bunkbed, certified by squaring.
Rational p_threshold(const Graph& g, const std::vector<int>& posts, const Rational& q);
VerificationReport check_p_threshold(const Graph& g, const std::string& instance, const std::vector<int>& posts,
                                     const Rational& q);

struct BsstCounts {
  Integer x_plus = 0;
  Integer x_minus = 0;
};
// Edges are oriented u -> v as stored.
BsstCounts bsst_counts(const Graph& g, int e, int f);

// Brute force over circular vertex orders; intended for n <= 8.
bool is_outerplanar(const Graph& g);

std::vector<std::string> identity_suite_names();
VerificationReport run_identity_suite(const std::string& suite, const std::vector<CatalogEntry>& instances,
                                      const std::string& instance_label = "catalog");

struct ScanOptions {
  Grid grid = Grid::defaults();
  std::uint64_t seed = 1;
  int weightings = 20;
  int bunkbed_max_n = 4;
};
std::vector<std::string> conjecture_names();
VerificationReport scan_conjecture(const std::string& name, const std::vector<CatalogEntry>& catalog,
                                   const ScanOptions& opts, const std::string& instance_label = "catalog");
std::vector<VerificationReport> scan_conjectures(const std::vector<CatalogEntry>& catalog, const ScanOptions& opts);

VerificationReport check_hypergraph_factor();
VerificationReport check_root143();

// Instances named by a request: "graph" (built-in name), "graph_json" (inline graph) or "catalog" ("small<N>").
std::vector<CatalogEntry> resolve_instances(const nlohmann::json& request);

// Re-runs a report from its "request" object. Kinds: bunkbed, threshold, identity, conjecture,
// hypergraph-factor, root143, table2.
VerificationReport run_request(const nlohmann::json& request);

}  // namespace bunkbed

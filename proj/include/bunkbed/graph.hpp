#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bunkbed/multipoly.hpp"
#include "bunkbed/partition.hpp"

namespace bunkbed {

struct Edge {
  int u = 0;
  int v = 0;
  MultiPoly weight = MultiPoly(1);
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int add_edge(int u, int v, MultiPoly weight = MultiPoly(1));

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int v) const { return labels_.at(v); }
  void set_label(int v, std::string label);
  // Returns -1 when no vertex carries the label.
  int find_label(const std::string& label) const;
  // Accepts a label or a decimal vertex index.
  int resolve_vertex(const std::string& token) const;

  const std::vector<int>& posts() const { return posts_; }
  void set_posts(std::vector<int> posts);

  bool uniform_weight() const;
  bool constant_weights() const;
  Graph with_unit_weights() const;
  Graph with_uniform_weight(const MultiPoly& w) const;
  bool is_connected() const;

 private:
  void check_vertex(int v) const;
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<int> posts_;
};

enum class BunkbedMode { all_verticals, posts_contracted };

struct BunkbedSpec {
  Graph base;
  std::vector<int> posts;  // ignored in all-verticals mode
  BunkbedMode mode = BunkbedMode::all_verticals;
  MultiPoly vertical_weight = MultiPoly(1);
};

struct Bunkbed {
  Graph graph;
  std::vector<int> lower;  // lower[v] = vertex id of v in layer 1
  std::vector<int> upper;  // upper[v] = vertex id of v in layer 2 (== lower[v] for a contracted post)
  std::vector<int> vertical_edge;  // edge index of the vertical at v, or -1
};

Bunkbed bunkbed(const BunkbedSpec& spec);
Bunkbed bunkbed(const Graph& base);  // all verticals
Bunkbed bunkbed(const Graph& base, const std::vector<int>& posts);  // posts contracted

Graph minor(const Graph& g, const std::vector<int>& deletions, const std::vector<int>& contractions);

struct Components {
  SetPartition partition;  // over vertices 0..n-1
  int count = 0;
};
Components components_of(const Graph& g, const std::vector<int>& open_edges);

// Vertices: a = 0, b = 1, x_i = i + 1, c = n + 2.
Graph gadget(int n, const Rational& p);

struct Hypergraph {
  int n = 0;
  std::vector<std::array<int, 3>> hyperedges;
  std::vector<int> posts;
  std::vector<std::string> labels;
  int u = -1;
  int v = -1;
  void validate() const;
};

Hypergraph hollom_instance();

// Layer copies of a hypergraph with posts merged.
struct HyperBunkbed {
  int n = 0;
  std::vector<std::array<int, 3>> hyperedges;
  std::vector<int> lower, upper;
};
HyperBunkbed hypergraph_bunkbed(const Hypergraph& h);

// Built-in instances: K2 K3 K4 K5 K22 K23 C4 P3 P4 fig4-left fig4-right fig5-G-<n> fig5-H-<n> gadget-<n>.
Graph named_graph(const std::string& name);
std::vector<std::string> named_graph_names();

nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json hypergraph_to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const nlohmann::json& j);

// All connected simple graphs on n vertices up to isomorphism, canonical edge lists.
std::vector<Graph> connected_graphs(int n);

struct CatalogEntry {
  std::string name;
  Graph graph;
};
// Connected graphs on 1..max_n vertices plus the named instances (unit weights).
std::vector<CatalogEntry> catalog(int max_n = 5, bool include_named = true);

}  // namespace bunkbed

#include "bunkbed/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bunkbed {
namespace {

struct Dsu {
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  // Smaller index wins so merged vertices keep the lower id.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
  std::vector<int> parent;
};

}  // namespace

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  labels_.reserve(n);
  for (int v = 0; v < n; ++v) labels_.push_back(std::to_string(v));
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) {
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range for " + std::to_string(n_) + " vertices");
  }
}

int Graph::add_edge(int u, int v, MultiPoly weight) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  if (weight.is_constant() && weight.constant_value() <= 0) {
    throw std::invalid_argument("edge weight must be positive, got " + weight.to_string());
  }
  edges_.push_back({u, v, std::move(weight)});
  return static_cast<int>(edges_.size()) - 1;
}

void Graph::set_label(int v, std::string label) {
  check_vertex(v);
  labels_[v] = std::move(label);
}

int Graph::find_label(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

int Graph::resolve_vertex(const std::string& token) const {
  int byl = find_label(token);
  if (byl >= 0) return byl;
  try {
    std::size_t used = 0;
    int v = std::stoi(token, &used);
    if (used == token.size()) {
      check_vertex(v);
      return v;
    }
  } catch (const std::invalid_argument&) {
  }
  throw std::invalid_argument("no vertex named '" + token + "'");
}

void Graph::set_posts(std::vector<int> posts) {
  for (int v : posts) check_vertex(v);
  std::sort(posts.begin(), posts.end());
  posts.erase(std::unique(posts.begin(), posts.end()), posts.end());
  posts_ = std::move(posts);
}

bool Graph::uniform_weight() const {
  for (const auto& e : edges_) {
    if (!(e.weight == edges_.front().weight)) return false;
  }
  return true;
}

bool Graph::constant_weights() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight.is_constant(); });
}

Graph Graph::with_unit_weights() const { return with_uniform_weight(MultiPoly(1)); }

Graph Graph::with_uniform_weight(const MultiPoly& w) const {
  Graph g = *this;
  for (auto& e : g.edges_) e.weight = w;
  return g;
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  Dsu d(n_);
  int comps = n_;
  for (const auto& e : edges_) {
    if (d.unite(e.u, e.v)) --comps;
  }
  return comps == 1;
}

Bunkbed bunkbed(const BunkbedSpec& spec) {
  const Graph& base = spec.base;
  int n = base.vertex_count();
  Bunkbed out;
  out.lower.resize(n);
  out.upper.resize(n);
  out.vertical_edge.assign(n, -1);
  std::vector<bool> is_post(n, false);
  if (spec.mode == BunkbedMode::posts_contracted) {
    for (int t : spec.posts) {
      if (t < 0 || t >= n) throw std::out_of_range("post " + std::to_string(t) + " out of range");
      is_post[t] = true;
    }
  }
  int next = n;
  for (int v = 0; v < n; ++v) {
    out.lower[v] = v;
    out.upper[v] = is_post[v] ? v : next++;
  }
  Graph g(next);
  for (int v = 0; v < n; ++v) {
    if (is_post[v]) {
      g.set_label(v, base.label(v));
    } else {
      g.set_label(out.lower[v], base.label(v) + "_1");
      g.set_label(out.upper[v], base.label(v) + "_2");
    }
  }
  for (const auto& e : base.edges()) g.add_edge(out.lower[e.u], out.lower[e.v], e.weight);
  for (const auto& e : base.edges()) g.add_edge(out.upper[e.u], out.upper[e.v], e.weight);
  if (spec.mode == BunkbedMode::all_verticals) {
    for (int v = 0; v < n; ++v) out.vertical_edge[v] = g.add_edge(out.lower[v], out.upper[v], spec.vertical_weight);
  } else {
    std::vector<int> posts;
    for (int v = 0; v < n; ++v) {
      if (is_post[v]) posts.push_back(v);
    }
    g.set_posts(posts);
  }
  out.graph = std::move(g);
  return out;
}

Bunkbed bunkbed(const Graph& base) { return bunkbed(BunkbedSpec{base, {}, BunkbedMode::all_verticals}); }

Bunkbed bunkbed(const Graph& base, const std::vector<int>& posts) {
  return bunkbed(BunkbedSpec{base, posts, BunkbedMode::posts_contracted});
}

Graph minor(const Graph& g, const std::vector<int>& deletions, const std::vector<int>& contractions) {
  std::size_t m = g.edge_count();
  std::vector<int> role(m, 0);  // 1 delete, 2 contract
  for (int e : deletions) {
    if (e < 0 || static_cast<std::size_t>(e) >= m) throw std::out_of_range("edge index " + std::to_string(e) + " out of range");
    role[e] = 1;
  }
  for (int e : contractions) {
    if (e < 0 || static_cast<std::size_t>(e) >= m) throw std::out_of_range("edge index " + std::to_string(e) + " out of range");
    if (role[e] == 1) throw std::invalid_argument("edge " + std::to_string(e) + " both deleted and contracted");
    role[e] = 2;
  }
  int n = g.vertex_count();
  Dsu d(n);
  for (std::size_t e = 0; e < m; ++e) {
    if (role[e] == 2) d.unite(g.edge(e).u, g.edge(e).v);
  }
  std::vector<int> id(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    if (d.find(v) == v) id[v] = next++;
  }
  Graph out(next);
  std::vector<std::string> label(next);
  for (int v = 0; v < n; ++v) {
    int r = id[d.find(v)];
    label[r] += (label[r].empty() ? "" : "+") + g.label(v);
  }
  for (int v = 0; v < next; ++v) out.set_label(v, label[v]);
  for (std::size_t e = 0; e < m; ++e) {
    if (role[e] != 0) continue;
    int a = id[d.find(g.edge(e).u)], b = id[d.find(g.edge(e).v)];
    if (a != b) out.add_edge(a, b, g.edge(e).weight);
  }
  std::vector<int> posts;
  for (int t : g.posts()) posts.push_back(id[d.find(t)]);
  out.set_posts(posts);
  return out;
}

Components components_of(const Graph& g, const std::vector<int>& open_edges) {
  int n = g.vertex_count();
  Dsu d(n);
  int count = n;
  for (int e : open_edges) {
    const Edge& ed = g.edge(static_cast<std::size_t>(e));
    if (d.unite(ed.u, ed.v)) --count;
  }
  std::vector<int> ground(n), labels(n);
  for (int v = 0; v < n; ++v) {
    ground[v] = v;
    labels[v] = d.find(v);
  }
  return {SetPartition::from_labels(ground, labels), count};
}

Graph gadget(int n, const Rational& p) {
  if (n < 1) throw std::invalid_argument("gadget needs n >= 1");
  if (!(p > 0 && p < 1)) throw std::invalid_argument("gadget needs 0 < p < 1");
  Graph g(n + 3);
  g.set_label(0, "a");
  g.set_label(1, "b");
  for (int i = 1; i <= n; ++i) g.set_label(i + 1, "x" + std::to_string(i));
  g.set_label(n + 2, "c");
  MultiPoly horizontal(p), spoke(Rational(1 - p));
  for (int v = 1; v <= n + 1; ++v) g.add_edge(v, v + 1, horizontal);
  for (int v = 1; v <= n + 2; ++v) g.add_edge(0, v, spoke);
  return g;
}

void Hypergraph::validate() const {
  for (const auto& he : hyperedges) {
    for (int x : he) {
      if (x < 0 || x >= n) throw std::out_of_range("hyperedge member out of range");
    }
    if (he[0] == he[1] || he[0] == he[2] || he[1] == he[2]) throw std::invalid_argument("hyperedge members must be distinct");
  }
  for (int t : posts) {
    if (t < 0 || t >= n) throw std::out_of_range("post out of range");
  }
  if ((u >= n) || (v >= n)) throw std::out_of_range("distinguished vertex out of range");
}

Hypergraph hollom_instance() {
  Hypergraph h;
  h.n = 10;
  // Labels 1..10 stored at ids 0..9.
  const int raw[6][3] = {{1, 2, 3}, {2, 4, 5}, {3, 6, 7}, {4, 6, 8}, {7, 8, 9}, {5, 9, 10}};
  for (const auto& he : raw) h.hyperedges.push_back({he[0] - 1, he[1] - 1, he[2] - 1});
  h.posts = {2, 4, 7};
  for (int i = 1; i <= 10; ++i) h.labels.push_back(std::to_string(i));
  h.u = 0;
  h.v = 9;
  return h;
}

HyperBunkbed hypergraph_bunkbed(const Hypergraph& h) {
  h.validate();
  HyperBunkbed b;
  std::vector<bool> is_post(h.n, false);
  for (int t : h.posts) is_post[t] = true;
  b.lower.resize(h.n);
  b.upper.resize(h.n);
  int next = h.n;
  for (int v = 0; v < h.n; ++v) {
    b.lower[v] = v;
    b.upper[v] = is_post[v] ? v : next++;
  }
  b.n = next;
  for (const auto& he : h.hyperedges) b.hyperedges.push_back({b.lower[he[0]], b.lower[he[1]], b.lower[he[2]]});
  for (const auto& he : h.hyperedges) b.hyperedges.push_back({b.upper[he[0]], b.upper[he[1]], b.upper[he[2]]});
  return b;
}

namespace {

Graph complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

Graph complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  }
  return g;
}

Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle(int n) {
  Graph g = path(n);
  g.add_edge(n - 1, 0);
  return g;
}

Graph four_cycle_with_post(bool right) {
  Graph g(4);
  if (!right) {
    // u - x - v - y - u
    for (auto [v, l] : {std::pair{0, "u"}, {1, "x"}, {2, "v"}, {3, "y"}}) g.set_label(v, l);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 0);
  } else {
    // u - x - y - v - u
    for (auto [v, l] : {std::pair{0, "u"}, {1, "x"}, {2, "y"}, {3, "v"}}) g.set_label(v, l);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 0);
  }
  g.set_posts({1});
  return g;
}

// Ladder with n-edge rails: top t_0..t_n (ids 0..n), bottom s_0..s_n (ids n+1..2n+1), rungs t_i s_i.
Graph ladder(int n, bool variant_h) {
  if (n < 1) throw std::invalid_argument("fig5 graphs need n >= 1");
  Graph g(2 * n + 2);
  auto t = [](int i) { return i; };
  auto s = [n](int i) { return n + 1 + i; };
  for (int i = 0; i <= n; ++i) {
    g.set_label(t(i), "t" + std::to_string(i));
    g.set_label(s(i), "s" + std::to_string(i));
  }
  for (int i = 0; i < n; ++i) g.add_edge(t(i), t(i + 1));
  for (int i = 0; i < n; ++i) g.add_edge(s(i), s(i + 1));
  for (int i = 0; i <= n; ++i) g.add_edge(t(i), s(i));
  g.set_label(t(0), "a");
  g.set_label(s(0), "u");
  if (!variant_h) {
    g.set_label(t(n), "v");
    g.set_label(s(n), "b");
    g.set_posts({t(0), s(n)});
  } else {
    g.set_label(t(n), "b");
    g.set_label(s(n), "v");
    g.set_posts({t(0), t(n)});
  }
  return g;
}

int suffix_number(const std::string& name, const std::string& prefix) {
  std::string rest = name.substr(prefix.size());
  if (rest.empty() || !std::all_of(rest.begin(), rest.end(), ::isdigit)) {
    throw std::invalid_argument("bad instance size in '" + name + "'");
  }
  return std::stoi(rest);
}

}  // namespace

Graph named_graph(const std::string& name) {
  if (name == "K2") return complete(2);
  if (name == "K3") return complete(3);
  if (name == "K4") return complete(4);
  if (name == "K5") return complete(5);
  if (name == "K22") return complete_bipartite(2, 2);
  if (name == "K23") return complete_bipartite(2, 3);
  if (name == "C4") return cycle(4);
  if (name == "P3") return path(3);
  if (name == "P4") return path(4);
  if (name == "fig4-left") return four_cycle_with_post(false);
  if (name == "fig4-right") return four_cycle_with_post(true);
  if (name.rfind("fig5-G-", 0) == 0) return ladder(suffix_number(name, "fig5-G-"), false);
  if (name.rfind("fig5-H-", 0) == 0) return ladder(suffix_number(name, "fig5-H-"), true);
  if (name.rfind("gadget-", 0) == 0) return gadget(suffix_number(name, "gadget-"), Rational(1, 100));
  throw std::invalid_argument("unknown graph instance '" + name + "'");
}

std::vector<std::string> named_graph_names() {
  return {"K2", "K3", "K4", "K5", "K22", "K23", "C4", "P3", "P4", "fig4-left", "fig4-right",
          "fig5-G-<n>", "fig5-H-<n>", "gadget-<n>"};
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.vertex_count();
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges()) j["edges"].push_back({e.u, e.v, e.weight.to_string()});
  j["posts"] = g.posts();
  nlohmann::json labels = nlohmann::json::object();
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.label(v) != std::to_string(v)) labels[std::to_string(v)] = g.label(v);
  }
  j["labels"] = labels;
  return j;
}

Graph graph_from_json(const nlohmann::json& j) {
  for (const auto& [key, value] : j.items()) {
    if (key != "n" && key != "edges" && key != "posts" && key != "labels") {
      throw std::invalid_argument("unknown graph field '" + key + "'");
    }
  }
  Graph g(j.at("n").get<int>());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3) throw std::invalid_argument("edge must be [u, v] or [u, v, weight]");
    MultiPoly w(1);
    if (e.size() == 3) w = e[2].is_string() ? MultiPoly::parse(e[2].get<std::string>()) : MultiPoly(e[2].get<long>());
    g.add_edge(e[0].get<int>(), e[1].get<int>(), w);
  }
  if (j.contains("posts")) g.set_posts(j.at("posts").get<std::vector<int>>());
  if (j.contains("labels")) {
    for (const auto& [key, value] : j.at("labels").items()) g.set_label(std::stoi(key), value.get<std::string>());
  }
  return g;
}

nlohmann::json hypergraph_to_json(const Hypergraph& h) {
  nlohmann::json j;
  j["n"] = h.n;
  j["hyperedges"] = h.hyperedges;
  j["posts"] = h.posts;
  j["labels"] = h.labels;
  if (h.u >= 0) j["u"] = h.u;
  if (h.v >= 0) j["v"] = h.v;
  return j;
}

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
  Hypergraph h;
  h.n = j.at("n").get<int>();
  for (const auto& he : j.at("hyperedges")) {
    if (!he.is_array() || he.size() != 3) throw std::invalid_argument("hyperedges must have three members");
    h.hyperedges.push_back({he[0].get<int>(), he[1].get<int>(), he[2].get<int>()});
  }
  if (j.contains("posts")) h.posts = j.at("posts").get<std::vector<int>>();
  if (j.contains("labels")) h.labels = j.at("labels").get<std::vector<std::string>>();
  else for (int v = 0; v < h.n; ++v) h.labels.push_back(std::to_string(v));
  h.u = j.value("u", -1);
  h.v = j.value("v", -1);
  h.validate();
  return h;
}

}  // namespace bunkbed

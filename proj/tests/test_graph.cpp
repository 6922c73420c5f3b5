#include <doctest.h>

#include <random>
#include <set>

#include "bunkbed/graph.hpp"

using namespace bunkbed;

namespace {

Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

std::multiset<std::pair<int, int>> edge_set(const Graph& g) {
  std::multiset<std::pair<int, int>> s;
  for (const auto& e : g.edges()) s.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  return s;
}

// DFS labelling of the open subgraph.
std::vector<int> dfs_components(const Graph& g, const std::vector<int>& open) {
  std::vector<std::vector<int>> adj(g.vertex_count());
  for (int e : open) {
    adj[g.edge(e).u].push_back(g.edge(e).v);
    adj[g.edge(e).v].push_back(g.edge(e).u);
  }
  std::vector<int> comp(g.vertex_count(), -1);
  int c = 0;
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] != -1) continue;
    std::vector<int> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x]) {
        if (comp[y] == -1) {
          comp[y] = c;
          stack.push_back(y);
        }
      }
    }
    ++c;
  }
  return comp;
}

}  // namespace

TEST_CASE("bunkbed examples") {
  Bunkbed k2 = bunkbed::bunkbed(named_graph("K2"));
  CHECK(k2.graph.vertex_count() == 4);
  CHECK(k2.graph.edge_count() == 4);
  Bunkbed p = bunkbed::bunkbed(path(3));
  CHECK(p.graph.vertex_count() == 6);
  CHECK(p.graph.edge_count() == 7);
  Bunkbed posts = bunkbed::bunkbed(path(3), std::vector<int>{1});
  CHECK(posts.graph.vertex_count() == 5);
  CHECK(posts.graph.edge_count() == 4);
  CHECK(posts.lower[1] == posts.upper[1]);
  CHECK(posts.vertical_edge[1] == -1);
}

TEST_CASE("bunkbed sizes and layer swap automorphism") {
  for (int n = 2; n <= 6; ++n) {
    for (const Graph& g : connected_graphs(n)) {
      Bunkbed b = bunkbed::bunkbed(g);
      CHECK(b.graph.vertex_count() == 2 * n);
      CHECK(b.graph.edge_count() == 2 * g.edge_count() + n);
      std::vector<int> swap(2 * n);
      for (int v = 0; v < n; ++v) {
        swap[b.lower[v]] = b.upper[v];
        swap[b.upper[v]] = b.lower[v];
      }
      Graph image(2 * n);
      for (const auto& e : b.graph.edges()) image.add_edge(swap[e.u], swap[e.v]);
      CHECK(edge_set(image) == edge_set(b.graph));
    }
  }
  // posts-contracted: swap fixes the posts
  Graph c4 = named_graph("C4");
  Bunkbed bt = bunkbed::bunkbed(c4, std::vector<int>{0, 2});
  CHECK(bt.graph.vertex_count() == 6);
  std::vector<int> swap(bt.graph.vertex_count());
  for (int v = 0; v < 4; ++v) {
    swap[bt.lower[v]] = bt.upper[v];
    swap[bt.upper[v]] = bt.lower[v];
  }
  Graph image(bt.graph.vertex_count());
  for (const auto& e : bt.graph.edges()) image.add_edge(swap[e.u], swap[e.v]);
  CHECK(edge_set(image) == edge_set(bt.graph));
}

TEST_CASE("minor examples") {
  Graph k3 = named_graph("K3");
  Graph del = minor(k3, {0}, {});
  CHECK(del.vertex_count() == 3);
  CHECK(del.edge_count() == 2);
  Graph con = minor(k3, {}, {0});
  CHECK(con.vertex_count() == 2);
  CHECK(con.edge_count() == 2);
  for (const auto& e : con.edges()) CHECK(e.u != e.v);
  Graph p3 = minor(path(3), {}, {0, 1});
  CHECK(p3.vertex_count() == 1);
  CHECK(p3.edge_count() == 0);
  CHECK_THROWS(minor(k3, {5}, {}));
  CHECK_THROWS(minor(k3, {0}, {0}));
}

TEST_CASE("parallel edge weights survive contraction") {
  Graph g(3);
  g.add_edge(0, 1, MultiPoly(Rational(1, 3)));
  g.add_edge(1, 2, MultiPoly(Rational(1, 5)));
  g.add_edge(0, 2, MultiPoly(Rational(1, 7)));
  Graph m = minor(g, {}, {0});
  REQUIRE(m.edge_count() == 2);
  std::multiset<Rational> w;
  for (const auto& e : m.edges()) w.insert(e.weight.constant_value());
  CHECK(w == std::multiset<Rational>{Rational(1, 5), Rational(1, 7)});
}

TEST_CASE("components examples and dfs oracle") {
  Graph k3 = named_graph("K3");
  auto c1 = components_of(k3, {0});
  CHECK(c1.count == 2);
  CHECK(c1.partition.same_block(0, 1));
  CHECK(components_of(k3, {}).count == 3);
  CHECK(components_of(k3, {0, 1}).count == 1);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    Graph g(n);
    int m = static_cast<int>(rng() % 12);
    for (int i = 0; i < m; ++i) {
      int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
      if (u != v) g.add_edge(u, v);
    }
    std::vector<int> open;
    for (int e = 0; e < static_cast<int>(g.edge_count()); ++e) {
      if (rng() % 2) open.push_back(e);
    }
    auto c = components_of(g, open);
    auto oracle = dfs_components(g, open);
    CHECK(c.count == *std::max_element(oracle.begin(), oracle.end()) + 1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) CHECK(c.partition.same_block(a, b) == (oracle[a] == oracle[b]));
    }
  }
}

TEST_CASE("gadget construction") {
  Graph g5 = gadget(5, Rational(1, 100));
  CHECK(g5.vertex_count() == 8);
  CHECK(g5.edge_count() == 13);
  Graph g1 = gadget(1, Rational(1, 100));
  CHECK(g1.vertex_count() == 4);
  CHECK(g1.edge_count() == 5);
  int bottom = 0, spokes = 0;
  for (const auto& e : g5.edges()) {
    Rational w = e.weight.constant_value();
    bool spoke = e.u == 0 || e.v == 0;
    if (spoke) {
      ++spokes;
      CHECK(w == Rational(99, 100));
    } else {
      ++bottom;
      CHECK(w == Rational(1, 100));
    }
  }
  CHECK(bottom == 6);
  CHECK(spokes == 7);
  for (int n = 1; n <= 50; ++n) CHECK(gadget(n, Rational(1, 2)).edge_count() == static_cast<std::size_t>(2 * n + 3));
  CHECK_THROWS(gadget(0, Rational(1, 2)));
}

TEST_CASE("hollom instance") {
  Hypergraph h = hollom_instance();
  CHECK(h.n == 10);
  CHECK(h.hyperedges.size() == 6);
  for (const auto& e : h.hyperedges) {
    int posts = 0;
    for (int x : e) posts += std::count(h.posts.begin(), h.posts.end(), x) ? 1 : 0;
    CHECK(posts == 1);
  }
  HyperBunkbed hb = hypergraph_bunkbed(h);
  CHECK(hb.hyperedges.size() == 12);
  CHECK(hb.n == 17);
  CHECK(h.labels[h.u] == "1");
  CHECK(h.labels[h.v] == "10");
}

TEST_CASE("graph json round trip") {
  Graph g = named_graph("fig4-left");
  Graph back = graph_from_json(graph_to_json(g));
  CHECK(back.vertex_count() == g.vertex_count());
  CHECK(edge_set(back) == edge_set(g));
  CHECK(back.posts() == g.posts());
  CHECK(back.labels() == g.labels());
  CHECK_THROWS(graph_from_json(nlohmann::json{{"n", 2}, {"edges", {{0, 2, "1"}}}}));
  CHECK_THROWS(graph_from_json(nlohmann::json{{"n", 2}, {"edges", {{0, 0, "1"}}}}));
}

TEST_CASE("connected graph catalog counts") {
  // OEIS A001349
  const std::size_t counts[] = {0, 1, 1, 2, 6, 21, 112};
  for (int n = 1; n <= 6; ++n) CHECK(connected_graphs(n).size() == counts[n]);
  auto cat = catalog(5, true);
  CHECK(cat.size() == 1 + 1 + 2 + 6 + 21 + 12);
  for (const auto& ce : cat) CHECK(ce.graph.is_connected());
}

TEST_CASE("named graphs") {
  CHECK(named_graph("K23").edge_count() == 6);
  Graph l = named_graph("fig4-left");
  CHECK(l.vertex_count() == 4);
  CHECK(l.posts().size() == 1);
  Graph g2 = named_graph("fig5-G-2");
  CHECK(g2.posts().size() == 2);
  CHECK_THROWS(named_graph("nope"));
}

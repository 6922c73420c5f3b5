#include <doctest.h>

#include <numeric>
#include <random>

#include "bunkbed/graph.hpp"
#include "bunkbed/treealg.hpp"

using namespace bunkbed;

namespace {

Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

// Spanning forests by brute force; each returned entry is the component label per vertex.
std::vector<std::vector<int>> spanning_forests(const Graph& g, int components) {
  int n = g.vertex_count();
  int m = static_cast<int>(g.edge_count());
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (std::popcount(mask) != n - components) continue;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool acyclic = true;
    for (int e = 0; e < m && acyclic; ++e) {
      if (!(mask >> e & 1U)) continue;
      int a = find(g.edge(e).u), b = find(g.edge(e).v);
      if (a == b) acyclic = false;
      parent[a] = b;
    }
    if (!acyclic) continue;
    std::vector<int> label(n);
    for (int v = 0; v < n; ++v) label[v] = find(v);
    out.push_back(label);
  }
  return out;
}

Integer trees(const Graph& g) { return static_cast<long>(spanning_forests(g, 1).size()); }

// two-component forests with a,c together and b,d together (c == a / d == b allowed)
Integer two_block(const Graph& g, int a, int c, int b, int d) {
  long k = 0;
  for (const auto& f : spanning_forests(g, 2)) k += f[a] == f[c] && f[b] == f[d] && f[a] != f[b];
  return k;
}

RationalMatrix dense(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Rational>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (long x : row) r.back().push_back(x);
  }
  return RationalMatrix::from_rows(r);
}

std::vector<Graph> small_catalog(int max_n) {
  std::vector<Graph> out;
  for (int n = 2; n <= max_n; ++n) {
    for (const Graph& g : connected_graphs(n)) out.push_back(g);
  }
  return out;
}

}  // namespace

TEST_CASE("laplacian examples") {
  CHECK(laplacian(named_graph("K2")) == dense({{1, -1}, {-1, 1}}));
  CHECK(laplacian(named_graph("K3")) == dense({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
  Graph par(2);
  par.add_edge(0, 1);
  par.add_edge(0, 1);
  CHECK(laplacian(par) == dense({{2, -2}, {-2, 2}}));
  Graph w(2);
  w.add_edge(0, 1, MultiPoly(frac(1, 3)));
  CHECK(laplacian(w, true)(0, 1) == frac(-1, 3));
  for (const Graph& g : small_catalog(5)) {
    RationalMatrix L = laplacian(g);
    CHECK(L.is_symmetric());
    for (std::size_t i = 0; i < L.rows(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < L.cols(); ++j) s += L(i, j);
      CHECK(s == 0);
    }
  }
}

TEST_CASE("all minors examples") {
  Graph k3 = named_graph("K3");
  CHECK(all_minors_count(k3, {0}, {0}) == 3);
  CHECK(all_minors_count(k3, {0, 1}, {0, 1}) == 2);
  CHECK(all_minors_count(path(3), {0, 2}, {0, 2}) == 2);
  CHECK_THROWS(all_minors_count(k3, {0}, {0, 1}));
}

TEST_CASE("all minors with S = T counts rooted forests") {
  for (const Graph& g : small_catalog(5)) {
    int n = g.vertex_count();
    CHECK(all_minors_count(g, {0}, {0}) == trees(g));
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) CHECK(all_minors_count(g, {a, b}, {a, b}) == two_block(g, a, a, b, b));
    }
  }
}

TEST_CASE("pseudoinverse examples") {
  RationalMatrix k2 = pseudoinverse(laplacian(named_graph("K2")));
  CHECK(k2 == dense({{1, -1}, {-1, 1}}).scaled(frac(1, 4)));
  RationalMatrix k3 = pseudoinverse(laplacian(named_graph("K3")));
  RationalMatrix expect = (RationalMatrix::identity(3) - RationalMatrix::ones(3, 3).scaled(frac(1, 3))).scaled(frac(1, 3));
  CHECK(k3 == expect);
  Graph split(3);
  split.add_edge(0, 1);
  CHECK_THROWS_AS(pseudoinverse(laplacian(split)), std::domain_error);
}

TEST_CASE("penrose relations on small graphs") {
  for (const Graph& g : small_catalog(6)) {
    RationalMatrix L = laplacian(g);
    RationalMatrix P = pseudoinverse(L);
    std::size_t n = L.rows();
    CHECK(L * P * L == L);
    CHECK(P * L * P == P);
    CHECK((L * P).is_symmetric());
    CHECK((P * L).is_symmetric());
    CHECK(L * P == RationalMatrix::identity(n) - RationalMatrix::ones(n, n).scaled(Rational(1, static_cast<long>(n))));
  }
}

TEST_CASE("resistance examples") {
  CHECK(resistance(named_graph("K2"), 0, 1) == 1);
  CHECK(resistance(named_graph("K3"), 0, 1) == frac(2, 3));
  Graph c4 = named_graph("C4");
  CHECK(resistance(c4, 0, 2) == 1);
  CHECK(resistance(c4, 0, 1) == frac(3, 4));
  CHECK(resistance(path(4), 0, 3) == 3);
  Graph split(3);
  split.add_edge(0, 1);
  CHECK_THROWS(resistance(split, 0, 2));
}

TEST_CASE("resistance is two-forests over trees") {
  for (const Graph& g : small_catalog(5)) {
    LaplacianBundle b(g);
    Integer t = trees(g);
    for (int u = 0; u < g.vertex_count(); ++u) {
      for (int v = u + 1; v < g.vertex_count(); ++v) CHECK(b.resistance(u, v) == Rational(two_block(g, u, u, v, v)) / t);
    }
  }
}

TEST_CASE("cross inner examples") {
  Graph k4 = named_graph("K4");
  CHECK(cross_inner(k4, 0, 1, 0, 1) == resistance(k4, 0, 1));
  CHECK(cross_inner(k4, 0, 1, 2, 2) == 0);
  CHECK(cross_inner(path(4), 0, 1, 2, 3) == 0);
}

TEST_CASE("cross inner equals signed two-forest difference") {
  std::mt19937_64 rng(43);
  auto graphs = small_catalog(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph& g = graphs[rng() % graphs.size()];
    int n = g.vertex_count();
    int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
    int c = static_cast<int>(rng() % n), d = static_cast<int>(rng() % n);
    if (a == b || c == d) continue;
    Rational lhs = cross_inner(g, a, b, c, d);
    Integer diff = two_block(g, a, c, b, d) - two_block(g, a, d, b, c);
    CHECK(lhs == Rational(diff) / trees(g));
  }
}

TEST_CASE("resistance matrix identities") {
  for (const Graph& g : small_catalog(6)) {
    LaplacianBundle b(g);
    RationalMatrix R = b.resistance_matrix();
    const RationalMatrix& L = b.L();
    const RationalMatrix& P = b.pinv();
    CHECK(L * R * L == L.scaled(-2));
    CHECK(P * R * P == (P * P * P).scaled(-2));
  }
}

TEST_CASE("psd certificate") {
  CHECK(psd_certificate(RationalMatrix::identity(3)).psd);
  auto bad = psd_certificate(dense({{1, 2}, {2, 1}}));
  CHECK_FALSE(bad.psd);
  REQUIRE(bad.witness.size() == 2);
  CHECK(quadratic_form(dense({{1, 2}, {2, 1}}), bad.witness) < 0);
  CHECK_THROWS(psd_certificate(dense({{1, 2}, {3, 1}})));

  Graph g = named_graph("K3");
  Graph h = minor(g, {0}, {});
  CHECK(psd_certificate(pseudoinverse(laplacian(h)) - pseudoinverse(laplacian(g))).psd);
  CHECK(psd_certificate(laplacian(named_graph("K4"))).psd);

  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    RationalMatrix a(3, 4);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = static_cast<long>(rng() % 7) - 3;
    }
    RationalMatrix gram = a.transpose() * a;
    CHECK(psd_certificate(gram).psd);
    RationalMatrix shifted = gram - RationalMatrix::identity(4);
    auto cert = psd_certificate(shifted);
    // rank <= 3 so shifting down by I always breaks semidefiniteness
    CHECK_FALSE(cert.psd);
    CHECK(quadratic_form(shifted, cert.witness) < 0);
  }
}

TEST_CASE("bunkbed pseudoinverse of K2") {
  auto bp = bunkbed_pseudoinverse(named_graph("K2"));
  RationalMatrix expect(4, 4);
  const long diag[2][2] = {{5, -1}, {-1, 5}};
  const long off[2][2] = {{-1, -3}, {-3, -1}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      expect(i, j) = expect(i + 2, j + 2) = frac(diag[i][j], 16);
      expect(i, j + 2) = expect(i + 2, j) = frac(off[i][j], 16);
    }
  }
  CHECK(bp.direct == expect);
  CHECK(bp.block_formula == expect);
  Bunkbed b = bunkbed::bunkbed(named_graph("K2"));
  CHECK(resistance(b.graph, b.lower[0], b.lower[1]) == frac(3, 4));
  CHECK(resistance(b.graph, b.lower[0], b.upper[1]) == 1);
}

TEST_CASE("bunkbed block formula and resistance gap") {
  for (const Graph& g : small_catalog(6)) {
    auto bp = bunkbed_pseudoinverse(g);
    CHECK(bp.direct == bp.block_formula);
  }
  for (const Graph& g : small_catalog(5)) {
    int n = g.vertex_count();
    Bunkbed b = bunkbed::bunkbed(g);
    LaplacianBundle lb(b.graph);
    RationalMatrix K = inverse(laplacian(g) + RationalMatrix::identity(n).scaled(2));
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (u == v) continue;
        Rational gap = lb.resistance(b.lower[u], b.upper[v]) - lb.resistance(b.lower[u], b.lower[v]);
        CHECK(gap == 2 * K(u, v));
        CHECK(gap >= 0);
      }
    }
  }
}

TEST_CASE("posts entry examples") {
  CHECK(posts_entry(path(3), {1}, 0, 2) == 0);
  CHECK(posts_entry(named_graph("K3"), {2}, 0, 1) == frac(1, 3));
  CHECK_THROWS(posts_entry(named_graph("K3"), {}, 0, 1));
}

TEST_CASE("posts entry matches the contracted bunkbed pseudoinverse") {
  for (const Graph& g : small_catalog(5)) {
    int n = g.vertex_count();
    for (unsigned mask = 1; mask + 1 < (1U << n); ++mask) {
      std::vector<int> T, S;
      for (int v = 0; v < n; ++v) (mask >> v & 1U ? T : S).push_back(v);
      Bunkbed b = bunkbed::bunkbed(g, T);
      RationalMatrix P = pseudoinverse(laplacian(b.graph));
      for (int u : S) {
        for (int v : S) {
          Rational e = posts_entry(g, T, u, v);
          CHECK(e >= 0);
          CHECK(P(b.lower[u], b.lower[v]) - P(b.lower[u], b.upper[v]) == e);
        }
      }
    }
  }
}

TEST_CASE("rayleigh monotonicity") {
  for (const Graph& g : small_catalog(5)) {
    LaplacianBundle full(g);
    for (int f = 0; f < static_cast<int>(g.edge_count()); ++f) {
      Graph h = minor(g, {f}, {});
      if (!h.is_connected()) continue;
      LaplacianBundle less(h);
      for (int a = 0; a < g.vertex_count(); ++a) {
        for (int b = a + 1; b < g.vertex_count(); ++b) CHECK(full.resistance(a, b) <= less.resistance(a, b));
      }
    }
  }
}

#include <doctest.h>

#include <functional>
#include <numeric>
#include <random>

#include "bunkbed/errors.hpp"
#include "bunkbed/measures.hpp"

using namespace bunkbed;

namespace {

// Test-local enumerator: every edge subset with its component labels.
struct Config {
  std::uint64_t mask;
  int open;
  int kappa;
  std::vector<int> comp;
};

std::vector<Config> all_configs(const Graph& g) {
  int n = g.vertex_count();
  int m = static_cast<int>(g.edge_count());
  std::vector<Config> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int e = 0; e < m; ++e) {
        if (!(mask >> e & 1U)) continue;
        int a = comp[g.edge(e).u], b = comp[g.edge(e).v];
        if (a != b) {
          int lo = std::min(a, b), hi = std::max(a, b);
          for (auto& c : comp) {
            if (c == hi) c = lo;
          }
          changed = true;
        }
      }
    }
    std::vector<int> seen(comp);
    std::sort(seen.begin(), seen.end());
    int kappa = static_cast<int>(std::unique(seen.begin(), seen.end()) - seen.begin());
    out.push_back({mask, std::popcount(mask), kappa, comp});
  }
  return out;
}

Rational rc_weight(const Config& c, const Graph& g, const Rational& q) {
  Rational w = pow(q, static_cast<unsigned>(c.kappa));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    Rational p = g.edge(e).weight.constant_value();
    w *= (c.mask >> e & 1U) ? p : Rational(1 - p);
  }
  return w;
}

// P(event) under the random cluster measure by direct enumeration.
Rational rc_prob(const Graph& g, const Rational& q, const std::function<bool(const Config&)>& event) {
  Rational z = 0, hit = 0;
  for (const auto& c : all_configs(g)) {
    Rational w = rc_weight(c, g, q);
    z += w;
    if (event(c)) hit += w;
  }
  return hit / z;
}

Graph weighted(const Graph& g, const Rational& p) { return g.with_uniform_weight(MultiPoly(p)); }

std::vector<Graph> small_graphs(int max_n) {
  std::vector<Graph> out;
  for (int n = 2; n <= max_n; ++n) {
    for (auto& g : connected_graphs(n)) out.push_back(g);
  }
  return out;
}

}  // namespace

TEST_CASE("rc boundary table examples") {
  Graph k2(2);
  k2.add_edge(0, 1, MultiPoly::parse("g"));  // g stands in for p
  BoundaryTable t = rc_boundary_table(k2, {0, 1});
  CHECK(t.entry(SetPartition::single_block({0, 1})) == MultiPoly::parse("g*q"));
  CHECK(t.entry(SetPartition::singletons({0, 1})) == MultiPoly::parse("q^2 - g*q^2"));
  BoundaryTable z = rc_boundary_table(k2, {});
  CHECK(z.total() == MultiPoly::parse("g*q + q^2 - g*q^2"));

  Graph k3 = weighted(named_graph("K3"), Rational(1, 2));
  BoundaryTable t3 = rc_boundary_table(k3, {0, 1});
  // eight subsets, each 1/8: {01} alone joins with two components, four subsets join into one
  MultiPoly expect_joined = MultiPoly::parse("1/8*q") * MultiPoly(4) + MultiPoly::parse("1/8*q^2");
  CHECK(t3.entry(SetPartition::single_block({0, 1})) == expect_joined);
  CHECK(t3.entry(SetPartition::singletons({0, 1})) == MultiPoly::parse("1/8*q^3 + 2/8*q^2"));
}

TEST_CASE("rc connection probability examples") {
  Graph k2 = weighted(named_graph("K2"), Rational(1, 2));
  CHECK(rc_connection_prob(k2, 2, 0, 1) == Rational(1, 3));
  CHECK(rc_connection_prob(k2, 1, 0, 1) == Rational(1, 2));
  CHECK(rc_connection_prob(k2, 1, 0, 0) == 1);
  Bunkbed b = bunkbed::bunkbed(k2);
  Rational same = rc_connection_prob(b.graph, 2, b.lower[0], b.lower[1]);
  Rational cross = rc_connection_prob(b.graph, 2, b.lower[0], b.upper[1]);
  CHECK(same - cross >= 0);
}

TEST_CASE("boundary tables agree with direct enumeration") {
  std::mt19937_64 rng(41);
  for (const Graph& base : small_graphs(4)) {
    Graph g(base.vertex_count());
    for (const auto& e : base.edges()) g.add_edge(e.u, e.v, MultiPoly(Rational(static_cast<long>(rng() % 9 + 1)) / 10));
    int n = g.vertex_count();
    std::vector<int> marked{0, n - 1};
    BoundaryTable t = rc_boundary_table(g, marked);
    Rational q = Rational(static_cast<long>(rng() % 5 + 1)) / 2;
    Rational lib = t.probability({{Var::q, q}}, [&](const SetPartition& pi) { return pi.same_block(0, n - 1); });
    Rational direct = rc_prob(g, q, [&](const Config& c) { return c.comp[0] == c.comp[n - 1]; });
    CHECK(lib == direct);
    // entries sum to the partition function
    MultiPoly sum;
    for (const auto& [code, w] : t.entries) sum += w;
    CHECK(sum == rc_boundary_table(g, {}).total());
    for (const auto& [code, w] : t.entries) CHECK(w.substitute(Var::q, 1).constant_value() >= 0);
  }
}

TEST_CASE("q = 1 is independent percolation") {
  Graph g = weighted(named_graph("K4"), Rational(1, 3));
  BoundaryTable t = rc_boundary_table(g, {0, 1, 2});
  Rational total = 0;
  for (const auto& [code, w] : t.entries) total += poly_eval(w, {{Var::q, 1}});
  CHECK(total == 1);
  // P(0 ~ 1) at q = 1 via Bernoulli products
  Rational direct = 0;
  for (const auto& c : all_configs(g)) {
    if (c.comp[0] != c.comp[1]) continue;
    direct += pow(Rational(1, 3), c.open) * pow(Rational(2, 3), 6 - c.open);
  }
  CHECK(rc_connection_prob(g, 1, 0, 1) == direct);
}

TEST_CASE("enumeration guard") {
  Graph big(10);
  for (int i = 0; i < 30; ++i) big.add_edge(i % 10, (i + 1 + i / 10) % 10);
  CHECK_THROWS_AS(rc_boundary_table(big, {0}), GuardError);
}

TEST_CASE("forest table examples") {
  Graph k3 = named_graph("K3");
  ForestTable t = forest_table(k3, {0, 1, 2});
  CHECK(t.bracket_count(BracketQuery::of({})) == 3);
  CHECK(t.bracket_count(BracketQuery::of({{0}, {1}})) == 2);
  CHECK(t.bracket_count(BracketQuery::of({{0}, {1}, {2}})) == 1);
  CHECK(t.bracket_count(BracketQuery::of({{0}, {1}}, 1)) == 1);
  CHECK(forest_table(named_graph("K4"), {0}).bracket_count(BracketQuery::of({})) == 16);
  CHECK_THROWS(BracketQuery::of({{0}}, -1));
}

TEST_CASE("forest enumeration matches acyclic subsets") {
  for (const Graph& g : small_graphs(5)) {
    int n = g.vertex_count();
    std::map<int, long> by_size;
    enumerate_forests(g, [&](const std::vector<char>& in, int comps) {
      int k = 0;
      for (char c : in) k += c;
      CHECK(k + comps == n);
      ++by_size[k];
    });
    std::map<int, long> oracle;
    for (const auto& c : all_configs(g)) {
      if (c.open + c.kappa == n) ++oracle[c.open];
    }
    CHECK(by_size == oracle);
  }
}

TEST_CASE("arboreal probabilities match weak limit of rc with weights lambda*q") {
  Rational lambda(3, 2);
  for (const Graph& g : small_graphs(4)) {
    int n = g.vertex_count();
    ForestTable ft = forest_table(g, {0, n - 1});
    Rational arb = ft.probability(lambda, [&](const SetPartition& pi) { return pi.same_block(0, n - 1); });
    BoundaryTable rc = rc_boundary_table(g.with_uniform_weight(MultiPoly(lambda) * MultiPoly::variable(Var::q)), {0, n - 1});
    MultiPoly z = rc.total().coefficient(Var::q, static_cast<unsigned>(n));
    MultiPoly hit = rc.entry(SetPartition::single_block({0, n - 1})).coefficient(Var::q, static_cast<unsigned>(n));
    CHECK(rc.total().min_degree(Var::q) == static_cast<unsigned>(n));
    CHECK(hit.constant_value() / z.constant_value() == arb);
  }
}

TEST_CASE("alternate model counts") {
  auto run = [](const std::string& name) {
    Graph g = named_graph(name);
    return alt_colouring_counts(g, g.posts(), g.find_label("u"), g.find_label("v"));
  };
  AltCounts l = run("fig4-left");
  CHECK(l.rr == 6);
  CHECK(l.rb == 4);
  CHECK(l.total == 14);
  AltCounts r = run("fig4-right");
  CHECK(r.rr == 8);
  CHECK(r.rb == 2);
  CHECK(r.total == 14);
  AltCounts e = alt_colouring_counts(named_graph("K2"), {}, 0, 1);
  CHECK(e.rr == 1);
  CHECK(e.rb == 0);
  CHECK(e.total == 2);
  Graph fl = named_graph("fig4-left");
  CHECK_THROWS(alt_colouring_counts(fl, fl.posts(), fl.posts()[0], fl.find_label("v")));
}

TEST_CASE("hypergraph difference") {
  Hypergraph h = hollom_instance();
  MultiPoly d = hypergraph_rc_difference(h, h.u, h.v);
  MultiPoly shape = MultiPoly::parse("g^6*h^6*q^5") * MultiPoly::parse("q^3 - 5*q^2 + 10*q - 7");
  Rational c = d.terms().rbegin()->second / shape.terms().rbegin()->second;
  CHECK(c > 0);
  CHECK(d == shape * MultiPoly(c));
  CHECK(poly_eval(d, {{Var::q, 1}, {Var::g, 1}, {Var::h, 1}}) < 0);

  Hypergraph one;
  one.n = 3;
  one.hyperedges = {{0, 1, 2}};
  one.labels = {"a", "b", "c"};
  one.u = 0;
  one.v = 1;
  HypergraphConnection hc = hypergraph_connection(one, 0, 1);
  CHECK(hc.cross_layer.is_zero());
  CHECK_FALSE(hc.same_layer.is_zero());
}

TEST_CASE("Harris inequality at q = 1") {
  for (const Graph& base : small_graphs(5)) {
    int n = base.vertex_count();
    if (n < 3) continue;
    for (int t = 1; t + 1 < n; ++t) {
      ConnectivityCensus census(base, {0, t, n - 1});
      for (const Rational p : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
        Rational ut = census.probability(p, 1, [&](const SetPartition& pi) { return pi.same_block(0, t); });
        Rational tv = census.probability(p, 1, [&](const SetPartition& pi) { return pi.same_block(t, n - 1); });
        Rational both = census.probability(p, 1, [](const SetPartition& pi) { return pi.block_count() == 1; });
        CHECK(both >= ut * tv);
      }
    }
  }
}

TEST_CASE("Gladkov inequality") {
  std::mt19937_64 rng(43);
  for (const Graph& base : small_graphs(5)) {
    int n = base.vertex_count();
    if (n < 3) continue;
    Graph g(n);
    for (const auto& e : base.edges()) g.add_edge(e.u, e.v, MultiPoly(Rational(static_cast<long>(rng() % 9 + 1)) / 10));
    int a = 0, b = n / 2, c = n - 1;
    BoundaryTable t = rc_boundary_table(g, {a, b, c});
    for (const Rational q : {Rational(1), Rational(3, 2), Rational(2)}) {
      auto mu = [&](std::vector<std::vector<int>> blocks) {
        SetPartition want = SetPartition::canonicalize({a, b, c}, blocks);
        return t.probability({{Var::q, q}}, [&](const SetPartition& pi) { return pi == want; });
      };
      Rational all = mu({{a, b, c}}), none = mu({{a}, {b}, {c}});
      Rational x = mu({{a, b}, {c}}), y = mu({{a, c}, {b}}), z = mu({{b, c}, {a}});
      CHECK(all * none >= x * y + y * z + z * x);
    }
  }
}

TEST_CASE("rc and percolation within q^n of each other") {
  std::mt19937_64 rng(47);
  for (const char* name : {"K3", "C4", "P4"}) {
    Graph g = weighted(bunkbed::bunkbed(named_graph(name)).graph, Rational(2, 5));
    int n = g.vertex_count();
    auto configs = all_configs(g);
    for (const Rational q : {Rational(1, 2), Rational(2), Rational(3)}) {
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<char> in(configs.size());
        for (auto& x : in) x = static_cast<char>(rng() % 2);
        Rational zr = 0, zp = 0, xr = 0, xp = 0;
        for (std::size_t i = 0; i < configs.size(); ++i) {
          Rational wr = rc_weight(configs[i], g, q), wp = rc_weight(configs[i], g, 1);
          zr += wr;
          zp += wp;
          if (in[i]) {
            xr += wr;
            xp += wp;
          }
        }
        Rational rc = xr / zr, perc = xp / zp;
        Rational r = q > 1 ? q : Rational(1 / q);
        CHECK(rc <= pow(r, static_cast<unsigned>(n)) * perc);
        CHECK(perc <= pow(r, static_cast<unsigned>(n)) * rc);
      }
    }
  }
}

TEST_CASE("projected measure comparison for shared verticals with pendants") {
  // G: bunkbed of a path with posts' verticals; H: those verticals plus pendant copies at each post.
  Rational p(1, 3);
  for (const Rational q : {Rational(1, 2), Rational(2)}) {
    for (int k = 1; k <= 2; ++k) {
      Graph base(3);
      base.add_edge(0, 1, MultiPoly(p));
      base.add_edge(1, 2, MultiPoly(p));
      Bunkbed b = bunkbed::bunkbed(BunkbedSpec{base, {}, BunkbedMode::all_verticals, MultiPoly(p)});
      Graph g = b.graph;
      int gm = static_cast<int>(g.edge_count());
      // shared edges: the vertical at vertex 1
      std::vector<int> shared{b.vertical_edge[1]};
      int n0 = g.vertex_count();
      Graph gu(n0 + 2 * k);
      for (const auto& e : g.edges()) gu.add_edge(e.u, e.v, e.weight);
      for (int i = 0; i < k; ++i) {
        int lo = n0 + 2 * i, hi = lo + 1;
        gu.add_edge(b.lower[1], lo, MultiPoly(p));
        gu.add_edge(b.upper[1], hi, MultiPoly(p));
        gu.add_edge(lo, hi, MultiPoly(p));
      }
      Graph gi(n0 + 2 * k);  // G with the pendant vertices isolated
      for (const auto& e : g.edges()) gi.add_edge(e.u, e.v, e.weight);
      std::map<std::uint64_t, Rational> proj, alone;
      Rational zu = 0, zg = 0;
      for (const auto& c : all_configs(gu)) {
        Rational w = rc_weight(c, gu, q);
        proj[c.mask & ((std::uint64_t{1} << gm) - 1)] += w;
        zu += w;
      }
      for (const auto& c : all_configs(gi)) {
        Rational w = rc_weight(c, gi, q);
        alone[c.mask] += w;
        zg += w;
      }
      Rational r = q > 1 ? q : Rational(1 / q);
      Rational bound = pow(r, static_cast<unsigned>(shared.size()));
      for (const auto& [a, w] : alone) {
        Rational mg = w / zg, mu = proj[a] / zu;
        CHECK(mu <= bound * mg);
        CHECK(mg <= bound * mu);
      }
    }
  }
}

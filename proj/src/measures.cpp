#include "bunkbed/measures.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "bunkbed/errors.hpp"

namespace bunkbed {
namespace {

struct Dsu {
  explicit Dsu(int n) : parent(n) { reset(); }
  void reset() { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
  std::vector<int> parent;
};

// Union-find with undo for backtracking; no path compression.
struct RollbackDsu {
  explicit RollbackDsu(int n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) const {
    while (parent[a] != a) a = parent[a];
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    history.push_back(b);
    return true;
  }
  void undo() {
    int b = history.back();
    history.pop_back();
    size[parent[b]] -= size[b];
    parent[b] = b;
  }
  std::vector<int> parent, size, history;
};

void check_marked(const Graph& g, const std::vector<int>& marked) {
  if (static_cast<int>(marked.size()) > kMaxPackedElements) {
    throw GuardError("at most 16 marked vertices are supported");
  }
  std::vector<int> s = marked;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("marked vertices must be distinct");
  for (int v : marked) {
    if (v < 0 || v >= g.vertex_count()) throw std::out_of_range("marked vertex " + std::to_string(v) + " out of range");
  }
}

void check_subset_guard(std::size_t m) {
  int limit = guards().subset_edges;
  if (static_cast<int>(m) > limit) {
    throw GuardError("subset enumeration over " + std::to_string(m) + " edges costs 2^" + std::to_string(m) +
                     " configurations (limit " + std::to_string(limit) +
                     " edges); use the glue module's factor contraction for large instances");
  }
}

std::uint64_t marked_code(Dsu& d, const std::vector<int>& marked) {
  std::uint8_t labels[kMaxPackedElements];
  for (std::size_t i = 0; i < marked.size(); ++i) labels[i] = static_cast<std::uint8_t>(d.find(marked[i]));
  return packed::encode_labels(labels, static_cast<int>(marked.size()));
}

}  // namespace

MultiPoly BoundaryTable::entry(const SetPartition& pi) const {
  if (pi.ground() != marked) throw std::invalid_argument("partition ground differs from the marked vertices");
  auto it = entries.find(pi.code());
  return it == entries.end() ? MultiPoly() : it->second;
}

MultiPoly BoundaryTable::total() const {
  MultiPoly z;
  for (const auto& [code, w] : entries) z += w;
  return z;
}

MultiPoly BoundaryTable::event_weight(const PartitionEvent& event) const {
  MultiPoly z;
  for (const auto& [code, w] : entries) {
    if (event(partition(code))) z += w;
  }
  return z;
}

Rational BoundaryTable::probability(const Assignment& point, const PartitionEvent& event) const {
  Rational z = poly_eval(total(), point);
  if (z == 0) throw std::domain_error("partition function vanishes at this point");
  return poly_eval(event_weight(event), point) / z;
}

ConnectivityCensus::ConnectivityCensus(const Graph& g, std::vector<int> marked)
    : n_(g.vertex_count()), m_(static_cast<int>(g.edge_count())), marked_(std::move(marked)) {
  check_marked(g, marked_);
  check_subset_guard(g.edge_count());
  std::vector<std::pair<int, int>> ends;
  for (const auto& e : g.edges()) ends.emplace_back(e.u, e.v);
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> acc;
  std::size_t stride = static_cast<std::size_t>(n_) + 1;
  Dsu d(n_);
  std::uint64_t limit = std::uint64_t{1} << m_;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    d.reset();
    int kappa = n_, k = 0;
    for (int e = 0; e < m_; ++e) {
      if (mask >> e & 1U) {
        ++k;
        if (d.unite(ends[e].first, ends[e].second)) --kappa;
      }
    }
    auto& row = acc[marked_code(d, marked_)];
    if (row.empty()) row.assign((m_ + 1) * stride, 0);
    ++row[k * stride + kappa];
  }
  counts_.insert(acc.begin(), acc.end());
}

std::map<std::uint64_t, Rational> ConnectivityCensus::weights(const Rational& p, const Rational& q) const {
  std::vector<Rational> pk(m_ + 1), rk(m_ + 1), qk(n_ + 1);
  for (int k = 0; k <= m_; ++k) {
    pk[k] = pow(p, k);
    rk[k] = pow(Rational(1 - p), k);
  }
  for (int k = 0; k <= n_; ++k) qk[k] = pow(q, k);
  std::size_t stride = static_cast<std::size_t>(n_) + 1;
  std::map<std::uint64_t, Rational> out;
  for (const auto& [code, row] : counts_) {
    Rational w = 0;
    for (int k = 0; k <= m_; ++k) {
      Rational inner = 0;
      for (int c = 0; c <= n_; ++c) {
        std::uint64_t cnt = row[k * stride + c];
        if (cnt) inner += qk[c] * Rational(Integer(static_cast<unsigned long>(cnt)));
      }
      if (inner != 0) w += inner * pk[k] * rk[m_ - k];
    }
    out[code] = w;
  }
  return out;
}

Rational ConnectivityCensus::probability(const Rational& p, const Rational& q, const PartitionEvent& event) const {
  Rational z = 0, hit = 0;
  for (const auto& [code, w] : weights(p, q)) {
    z += w;
    if (event(SetPartition::from_code(marked_, code))) hit += w;
  }
  if (z == 0) throw std::domain_error("partition function vanishes at this point");
  return hit / z;
}

BoundaryTable ConnectivityCensus::table(const MultiPoly& w) const {
  std::vector<MultiPoly> wk(m_ + 1), rk(m_ + 1), qk(n_ + 1);
  MultiPoly r = MultiPoly(1) - w;
  wk[0] = rk[0] = qk[0] = MultiPoly(1);
  for (int k = 1; k <= m_; ++k) {
    wk[k] = wk[k - 1] * w;
    rk[k] = rk[k - 1] * r;
  }
  for (int k = 1; k <= n_; ++k) qk[k] = qk[k - 1] * MultiPoly::variable(Var::q);
  std::size_t stride = static_cast<std::size_t>(n_) + 1;
  BoundaryTable t;
  t.marked = marked_;
  for (const auto& [code, row] : counts_) {
    MultiPoly e;
    for (int k = 0; k <= m_; ++k) {
      MultiPoly inner;
      for (int c = 0; c <= n_; ++c) {
        std::uint64_t cnt = row[k * stride + c];
        if (cnt) inner += qk[c] * MultiPoly(Rational(Integer(static_cast<unsigned long>(cnt))));
      }
      if (!inner.is_zero()) e += inner * wk[k] * rk[m_ - k];
    }
    if (!e.is_zero()) t.entries[code] = e;
  }
  return t;
}

BoundaryTable rc_boundary_table(const Graph& g, const std::vector<int>& marked) {
  check_marked(g, marked);
  check_subset_guard(g.edge_count());
  if (g.edge_count() > 0 && g.uniform_weight()) {
    return ConnectivityCensus(g, marked).table(g.edge(0).weight);
  }
  int n = g.vertex_count();
  int m = static_cast<int>(g.edge_count());
  std::map<std::pair<std::uint64_t, int>, MultiPoly> acc;
  std::vector<MultiPoly> open(m), closed(m);
  for (int e = 0; e < m; ++e) {
    open[e] = g.edge(e).weight;
    closed[e] = MultiPoly(1) - open[e];
  }
  Dsu d(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    d.reset();
    int kappa = n;
    MultiPoly w(1);
    for (int e = 0; e < m; ++e) {
      if (mask >> e & 1U) {
        w *= open[e];
        if (d.unite(g.edge(e).u, g.edge(e).v)) --kappa;
      } else {
        w *= closed[e];
      }
    }
    acc[{marked_code(d, marked), kappa}] += w;
  }
  BoundaryTable t;
  t.marked = marked;
  for (const auto& [key, w] : acc) t.entries[key.first] += w * MultiPoly::variable(Var::q, key.second);
  for (auto it = t.entries.begin(); it != t.entries.end();) {
    it = it->second.is_zero() ? t.entries.erase(it) : std::next(it);
  }
  return t;
}

Rational rc_connection_prob(const Graph& g, const Rational& q, int u, int v) {
  if (!(q > 0)) throw std::invalid_argument("q must be positive");
  if (u == v) return 1;
  if (!g.constant_weights()) throw std::invalid_argument("rc_connection_prob needs rational edge weights");
  BoundaryTable t = rc_boundary_table(g, {u, v});
  return t.probability({{Var::q, q}}, [](const SetPartition& pi) { return pi.block_count() == 1; });
}

BracketQuery BracketQuery::of(const std::vector<std::vector<int>>& blocks, int extra) {
  if (extra < 0) throw std::invalid_argument("bracket extra must be non-negative");
  BracketQuery q;
  for (const auto& b : blocks) q.marked.insert(q.marked.end(), b.begin(), b.end());
  q.pattern = SetPartition::canonicalize(q.marked, blocks);
  q.extra = extra;
  return q;
}

void ForestTable::add(std::uint64_t code, int components, const MultiPoly& w) {
  auto& slot = entries_[{code, components}];
  slot += w;
}

MultiPoly ForestTable::bracket(const BracketQuery& query) const {
  if (query.pattern.ground() != query.marked) throw std::invalid_argument("bracket pattern ground differs from its marked list");
  for (int v : query.marked) {
    if (std::find(marked_.begin(), marked_.end(), v) == marked_.end()) {
      throw std::invalid_argument("bracket vertex " + std::to_string(v) + " is not marked in the forest table");
    }
  }
  int want = std::max(1, query.pattern.block_count()) + query.extra;
  MultiPoly total;
  for (const auto& [key, w] : entries_) {
    if (key.second != want) continue;
    SetPartition pi = SetPartition::from_code(marked_, key.first);
    if (pi.restrict_to(query.marked) == query.pattern) total += w;
  }
  return total;
}

Integer ForestTable::bracket_count(const BracketQuery& query) const {
  Rational c = bracket(query).constant_value();
  if (c.get_den() != 1) throw std::domain_error("bracket is not an integer count");
  return c.get_num();
}

MultiPoly ForestTable::event_weight(const PartitionEvent& event) const {
  MultiPoly total;
  for (const auto& [key, w] : entries_) {
    if (event(SetPartition::from_code(marked_, key.first))) {
      total += w * MultiPoly::variable(Var::l, static_cast<unsigned>(n_ - key.second));
    }
  }
  return total;
}

Rational ForestTable::probability(const Rational& lambda, const PartitionEvent& event) const {
  Assignment at{{Var::l, lambda}};
  Rational z = poly_eval(event_weight([](const SetPartition&) { return true; }), at);
  return poly_eval(event_weight(event), at) / z;
}

void enumerate_forests(const Graph& g, const std::function<void(const std::vector<char>&, int)>& visit) {
  check_subset_guard(g.edge_count());
  int n = g.vertex_count();
  std::size_t m = g.edge_count();
  RollbackDsu d(n);
  std::vector<char> in(m, 0);
  int comps = n;
  // Only edges joining two components are ever added, so every leaf is a forest.
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == m) {
      visit(in, comps);
      return;
    }
    rec(i + 1);
    const Edge& e = g.edge(i);
    if (d.find(e.u) != d.find(e.v)) {
      d.unite(e.u, e.v);
      in[i] = 1;
      --comps;
      rec(i + 1);
      ++comps;
      in[i] = 0;
      d.undo();
    }
  };
  rec(0);
}

ForestTable forest_table(const Graph& g, const std::vector<int>& marked) {
  check_marked(g, marked);
  check_subset_guard(g.edge_count());
  int n = g.vertex_count();
  std::size_t m = g.edge_count();
  bool unit = std::all_of(g.edges().begin(), g.edges().end(),
                          [](const Edge& e) { return e.weight == MultiPoly(1); });
  bool rational = g.constant_weights();
  std::vector<Rational> rw;
  if (rational) {
    for (const auto& e : g.edges()) rw.push_back(e.weight.constant_value());
  }
  std::unordered_map<std::uint64_t, std::uint64_t> unit_acc;  // key = code * 64 + kappa
  std::map<std::pair<std::uint64_t, int>, Rational> rat_acc;
  std::map<std::pair<std::uint64_t, int>, MultiPoly> poly_acc;
  Dsu d(n);
  enumerate_forests(g, [&](const std::vector<char>& in, int comps) {
    d.reset();
    for (std::size_t e = 0; e < m; ++e) {
      if (in[e]) d.unite(g.edge(e).u, g.edge(e).v);
    }
    std::uint64_t code = marked_code(d, marked);
    if (unit) {
      ++unit_acc[code * 64 + static_cast<std::uint64_t>(comps)];
    } else if (rational) {
      Rational w = 1;
      for (std::size_t e = 0; e < m; ++e) {
        if (in[e]) w *= rw[e];
      }
      rat_acc[{code, comps}] += w;
    } else {
      MultiPoly w(1);
      for (std::size_t e = 0; e < m; ++e) {
        if (in[e]) w *= g.edge(e).weight;
      }
      poly_acc[{code, comps}] += w;
    }
  });
  ForestTable t(n, marked);
  for (const auto& [key, c] : unit_acc) {
    t.add(key / 64, static_cast<int>(key % 64), MultiPoly(Rational(Integer(static_cast<unsigned long>(c)))));
  }
  for (const auto& [key, w] : rat_acc) t.add(key.first, key.second, MultiPoly(w));
  for (const auto& [key, w] : poly_acc) t.add(key.first, key.second, w);
  return t;
}

std::map<std::uint64_t, std::uint64_t> alt_colouring_patterns(const Graph& g, const std::vector<int>& posts, int u, int v) {
  std::size_t m = g.edge_count();
  if (static_cast<int>(m) > guards().colouring_edges) {
    throw GuardError("alternate-model enumeration over " + std::to_string(m) + " edges costs 2^" + std::to_string(m) +
                     " colourings (limit " + std::to_string(guards().colouring_edges) + ")");
  }
  for (int t : posts) {
    if (t == u || t == v) throw std::invalid_argument("u and v must not be posts in the alternate model");
  }
  if (u == v) throw std::invalid_argument("u and v must differ");
  Bunkbed b = bunkbed(g, posts);
  const Graph& bg = b.graph;
  std::vector<int> marked{b.lower[u], b.lower[v], b.upper[u], b.upper[v]};
  std::map<std::uint64_t, std::uint64_t> out;
  Dsu d(bg.vertex_count());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    d.reset();
    bool acyclic = true;
    for (std::size_t e = 0; e < m && acyclic; ++e) {
      // bit set = red = layer-1 copy (edge e); otherwise the layer-2 copy (edge m + e)
      const Edge& ed = bg.edge((mask >> e & 1U) ? e : m + e);
      acyclic = d.unite(ed.u, ed.v);
    }
    if (!acyclic) continue;
    ++out[marked_code(d, marked)];
  }
  return out;
}

AltCounts alt_colouring_counts(const Graph& g, const std::vector<int>& posts, int u, int v) {
  AltCounts c;
  std::vector<int> ground{0, 1, 2, 3};  // u1 v1 u2 v2
  for (const auto& [code, n] : alt_colouring_patterns(g, posts, u, v)) {
    SetPartition pi = SetPartition::from_code(ground, code);
    c.total += n;
    if (pi.same_block(0, 1)) c.rr += n;
    if (pi.same_block(0, 3)) c.rb += n;
  }
  return c;
}

HypergraphConnection hypergraph_connection(const Hypergraph& h, int u, int v) {
  HyperBunkbed b = hypergraph_bunkbed(h);
  std::size_t m = b.hyperedges.size();
  if (static_cast<int>(m) > guards().hyperedges) {
    throw GuardError("hypergraph enumeration over " + std::to_string(m) + " hyperedges costs 2^" + std::to_string(m) +
                     " subsets (limit " + std::to_string(guards().hyperedges) + ")");
  }
  if (u < 0 || u >= h.n || v < 0 || v >= h.n) throw std::out_of_range("hypergraph vertex out of range");
  int n = b.n;
  std::size_t stride = static_cast<std::size_t>(n) + 1;
  std::vector<std::uint64_t> all((m + 1) * stride, 0), same(all), cross(all);
  Dsu d(n);
  int u1 = b.lower[u], v1 = b.lower[v], v2 = b.upper[v];
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    d.reset();
    int kappa = n, k = 0;
    for (std::size_t e = 0; e < m; ++e) {
      if (!(mask >> e & 1U)) continue;
      ++k;
      const auto& he = b.hyperedges[e];
      if (d.unite(he[0], he[1])) --kappa;
      if (d.unite(he[0], he[2])) --kappa;
    }
    std::size_t idx = k * stride + kappa;
    ++all[idx];
    if (d.find(u1) == d.find(v1)) ++same[idx];
    if (d.find(u1) == d.find(v2)) ++cross[idx];
  }
  auto build = [&](const std::vector<std::uint64_t>& counts) {
    MultiPoly p;
    for (std::size_t k = 0; k <= m; ++k) {
      for (int c = 0; c <= n; ++c) {
        std::uint64_t cnt = counts[k * stride + c];
        if (!cnt) continue;
        Exponents e{};
        e[static_cast<std::size_t>(Var::q)] = static_cast<std::uint32_t>(c);
        e[static_cast<std::size_t>(Var::g)] = static_cast<std::uint32_t>(k);
        e[static_cast<std::size_t>(Var::h)] = static_cast<std::uint32_t>(m - k);
        p += MultiPoly::monomial(Rational(Integer(static_cast<unsigned long>(cnt))), e);
      }
    }
    return p;
  };
  return {build(same), build(cross), build(all)};
}

MultiPoly hypergraph_rc_difference(const Hypergraph& h, int u, int v) {
  return hypergraph_connection(h, u, v).difference();
}

}  // namespace bunkbed

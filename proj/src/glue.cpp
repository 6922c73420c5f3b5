#include "bunkbed/glue.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "bunkbed/errors.hpp"

namespace bunkbed {
namespace {

int index_of(const std::vector<int>& v, int x) {
  auto it = std::find(v.begin(), v.end(), x);
  return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

void check_boundary_size(std::size_t k, const std::string& context) {
  if (static_cast<int>(k) > guards().partition_size) {
    throw GuardError(context + ": boundary of " + std::to_string(k) + " vertices needs Bell(" + std::to_string(k) +
                     ") = " + std::to_string(bell_number(static_cast<int>(k))) + " table entries (limit " +
                     std::to_string(guards().partition_size) + ")");
  }
}

}  // namespace

UPoly Factor::entry(const SetPartition& pi) const {
  if (pi.ground() != boundary) throw std::invalid_argument("partition ground differs from the factor boundary");
  auto it = table.find(pi.code());
  return it == table.end() ? UPoly() : it->second;
}

UPoly Factor::closed_total() const {
  UPoly z;
  int k = static_cast<int>(boundary.size());
  for (const auto& [code, e] : table) z += e.shifted(static_cast<std::size_t>(packed::block_count(code, k)));
  return z;
}

bool Factor::operator==(const Factor& o) const {
  if (boundary != o.boundary) return false;
  auto nonzero = [](const std::map<std::uint64_t, UPoly>& t) {
    std::map<std::uint64_t, const UPoly*> out;
    for (const auto& [c, e] : t) {
      if (!e.is_zero()) out[c] = &e;
    }
    return out;
  };
  auto a = nonzero(table), b = nonzero(o.table);
  if (a.size() != b.size()) return false;
  for (const auto& [c, e] : a) {
    auto it = b.find(c);
    if (it == b.end() || !(*e == *it->second)) return false;
  }
  return true;
}

nlohmann::json Factor::to_json() const {
  nlohmann::json j;
  j["boundary"] = boundary;
  nlohmann::json t = nlohmann::json::object();
  for (const auto& [code, e] : table) t[partition(code).to_string()] = e.normalized().to_string();
  j["table"] = t;
  return j;
}

Factor scalar_factor(const UPoly& value) {
  Factor f;
  if (!value.is_zero()) f.table[0] = value;
  return f;
}

Factor edge_factor(int u, int v, const Rational& w) {
  if (u == v) throw std::invalid_argument("edge factor needs distinct endpoints");
  Factor f;
  f.boundary = {u, v};
  f.table[SetPartition::single_block(f.boundary).code()] = UPoly::constant(w);
  f.table[SetPartition::singletons(f.boundary).code()] = UPoly::constant(1 - w);
  return f;
}

Factor factor_from_graph(const Graph& g, const std::vector<int>& boundary) {
  std::size_t m = g.edge_count();
  if (static_cast<int>(m) > guards().subset_edges) {
    throw GuardError("factor_from_graph over " + std::to_string(m) + " edges costs 2^" + std::to_string(m) +
                     " subsets (limit " + std::to_string(guards().subset_edges) + ")");
  }
  check_boundary_size(boundary.size(), "factor_from_graph");
  if (!g.constant_weights()) throw std::invalid_argument("factor tables need rational edge weights");
  int n = g.vertex_count();
  std::vector<bool> on_boundary(n, false);
  for (int b : boundary) {
    if (b < 0 || b >= n) throw std::out_of_range("boundary vertex out of range");
    on_boundary[b] = true;
  }
  std::vector<Rational> w, r;
  for (const auto& e : g.edges()) {
    w.push_back(e.weight.constant_value());
    r.push_back(1 - w.back());
  }
  std::map<std::pair<std::uint64_t, int>, Rational> acc;
  std::vector<int> parent(n);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::iota(parent.begin(), parent.end(), 0);
    Rational weight = 1;
    for (std::size_t e = 0; e < m; ++e) {
      if (mask >> e & 1U) {
        weight *= w[e];
        int a = find(g.edge(e).u), b = find(g.edge(e).v);
        if (a != b) parent[b] = a;
      } else {
        weight *= r[e];
      }
    }
    // A root is internal if no boundary vertex lies in its component.
    std::vector<bool> touched(n, false);
    for (int b : boundary) touched[find(b)] = true;
    int internal = 0;
    for (int v = 0; v < n; ++v) {
      if (find(v) == v && !touched[v]) ++internal;
    }
    std::uint8_t labels[kMaxPackedElements];
    for (std::size_t i = 0; i < boundary.size(); ++i) labels[i] = static_cast<std::uint8_t>(find(boundary[i]));
    acc[{packed::encode_labels(labels, static_cast<int>(boundary.size())), internal}] += weight;
  }
  Factor f;
  f.boundary = boundary;
  for (const auto& [key, value] : acc) f.table[key.first] += UPoly::monomial(value, static_cast<std::size_t>(key.second));
  return f;
}

Factor multiply(const Factor& f1, const Factor& f2) {
  std::vector<int> U = f1.boundary;
  for (int v : f2.boundary) {
    if (index_of(U, v) < 0) U.push_back(v);
  }
  check_boundary_size(U.size(), "multiply");
  int k = static_cast<int>(U.size());
  int k1 = static_cast<int>(f1.boundary.size()), k2 = static_cast<int>(f2.boundary.size());
  std::vector<int> pos2(k2);
  for (int i = 0; i < k2; ++i) pos2[i] = index_of(U, f2.boundary[i]);

  // Per entry, the merges it imposes as (position, anchor position) pairs.
  auto constraints = [](const std::uint64_t code, int kk, const std::vector<int>* pos) {
    std::vector<std::pair<int, int>> out;
    int anchor[kMaxPackedElements];
    std::fill(anchor, anchor + kMaxPackedElements, -1);
    for (int i = 0; i < kk; ++i) {
      int b = static_cast<int>((code >> (4 * i)) & 0xF);
      int p = pos ? (*pos)[i] : i;
      if (anchor[b] < 0) anchor[b] = p;
      else out.emplace_back(p, anchor[b]);
    }
    return out;
  };
  std::vector<std::pair<const UPoly*, std::vector<std::pair<int, int>>>> c1, c2;
  for (const auto& [code, e] : f1.table) c1.emplace_back(&e, constraints(code, k1, nullptr));
  for (const auto& [code, e] : f2.table) c2.emplace_back(&e, constraints(code, k2, &pos2));

  std::map<std::uint64_t, std::vector<std::pair<const UPoly*, const UPoly*>>> groups;
  int parent[kMaxPackedElements];
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& [e1, m1] : c1) {
    for (const auto& [e2, m2] : c2) {
      std::iota(parent, parent + k, 0);
      for (auto [a, b] : m1) {
        int ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
      for (auto [a, b] : m2) {
        int ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
      std::uint8_t labels[kMaxPackedElements];
      for (int i = 0; i < k; ++i) labels[i] = static_cast<std::uint8_t>(find(i));
      groups[packed::encode_labels(labels, k)].emplace_back(e1, e2);
    }
  }
  Factor out;
  out.boundary = U;
  for (const auto& [code, pairs] : groups) {
    UPoly sum;
    for (const auto& [a, b] : pairs) sum += (*a) * (*b);
    if (!sum.is_zero()) out.table[code] = std::move(sum);
  }
  return out;
}

Factor eliminate(const Factor& f, int v) {
  int pos = index_of(f.boundary, v);
  if (pos < 0) throw std::invalid_argument("cannot eliminate vertex " + std::to_string(v) + ": not on the boundary");
  int k = static_cast<int>(f.boundary.size());
  Factor out;
  out.boundary = f.boundary;
  out.boundary.erase(out.boundary.begin() + pos);
  for (const auto& [code, e] : f.table) {
    packed::Rgs rgs;
    packed::decode(code, k, rgs);
    bool closed = true;
    std::uint8_t labels[kMaxPackedElements];
    int j = 0;
    for (int i = 0; i < k; ++i) {
      if (i == pos) continue;
      if (rgs[i] == rgs[pos]) closed = false;
      labels[j++] = rgs[i];
    }
    std::uint64_t c = packed::encode_labels(labels, k - 1);
    UPoly& slot = out.table[c];
    slot += closed ? e.shifted(1) : e;
  }
  for (auto it = out.table.begin(); it != out.table.end();) {
    it = it->second.is_zero() ? out.table.erase(it) : std::next(it);
  }
  return out;
}

Factor relabel(const Factor& f, const std::vector<int>& new_ids) {
  if (new_ids.size() != f.boundary.size()) throw std::invalid_argument("relabel needs one id per boundary vertex");
  std::set<int> distinct(new_ids.begin(), new_ids.end());
  if (distinct.size() != new_ids.size()) throw std::invalid_argument("relabel ids must be distinct");
  Factor out = f;
  out.boundary = new_ids;
  return out;
}

Factor reorder(const Factor& f, const std::vector<int>& boundary) {
  if (boundary.size() != f.boundary.size()) throw std::invalid_argument("reorder needs the same boundary set");
  int k = static_cast<int>(boundary.size());
  std::vector<int> from(k);
  for (int i = 0; i < k; ++i) {
    from[i] = index_of(f.boundary, boundary[i]);
    if (from[i] < 0) throw std::invalid_argument("reorder needs the same boundary set");
  }
  Factor out;
  out.boundary = boundary;
  for (const auto& [code, e] : f.table) {
    packed::Rgs rgs;
    packed::decode(code, k, rgs);
    std::uint8_t labels[kMaxPackedElements];
    for (int i = 0; i < k; ++i) labels[i] = rgs[from[i]];
    out.table[packed::encode_labels(labels, k)] += e;
  }
  return out;
}

Factor gadget_factor(int n, const Rational& p) {
  if (n < 1) throw std::invalid_argument("gadget needs n >= 1");
  const int a = 0, b = 1, c = n + 2;
  Rational spoke = 1 - p;
  Factor f = edge_factor(a, b, spoke);
  int cur = b;
  for (int next = 2; next <= c; ++next) {
    f = multiply(f, edge_factor(cur, next, p));
    f = multiply(f, edge_factor(a, next, spoke));
    if (cur != b) f = eliminate(f, cur);
    cur = next;
  }
  return f;
}

namespace {

struct Workspace {
  std::vector<Factor> factors;
  ContractionStats stats;

  void eliminate_vertex(int v) {
    std::vector<Factor> keep, touch;
    for (auto& f : factors) {
      (index_of(f.boundary, v) >= 0 ? touch : keep).push_back(std::move(f));
    }
    if (touch.empty()) {
      factors = std::move(keep);
      return;
    }
    Factor prod = std::move(touch.front());
    for (std::size_t i = 1; i < touch.size(); ++i) prod = multiply(prod, touch[i]);
    stats.max_boundary = std::max(stats.max_boundary, static_cast<int>(prod.boundary.size()));
    keep.push_back(eliminate(prod, v));
    stats.order.push_back(v);
    factors = std::move(keep);
  }

  Factor finish(const std::vector<int>& queries) {
    Factor total = scalar_factor(UPoly::constant(1));
    for (const auto& f : factors) total = multiply(total, f);
    stats.max_boundary = std::max(stats.max_boundary, static_cast<int>(total.boundary.size()));
    for (int v : std::vector<int>(total.boundary)) {
      if (index_of(queries, v) < 0) total = eliminate(total, v);
    }
    return reorder(total, queries);
  }
};

std::set<int> network_vertices(const FactorNetwork& net) {
  std::set<int> all;
  for (const auto& f : net.factors) all.insert(f.boundary.begin(), f.boundary.end());
  if (net.queries.empty()) throw std::invalid_argument("factor network needs at least one query vertex");
  for (int qv : net.queries) {
    if (!all.count(qv)) throw std::invalid_argument("query vertex " + std::to_string(qv) + " is on no factor boundary");
  }
  return all;
}

}  // namespace

Factor contract_network(const FactorNetwork& net, ContractionStats* stats) {
  std::set<int> pending = network_vertices(net);
  for (int qv : net.queries) pending.erase(qv);
  Workspace ws{net.factors, {}};
  while (!pending.empty()) {
    int best = -1;
    std::size_t best_size = SIZE_MAX;
    for (int v : pending) {
      std::set<int> merged;
      for (const auto& f : ws.factors) {
        if (index_of(f.boundary, v) >= 0) merged.insert(f.boundary.begin(), f.boundary.end());
      }
      if (merged.size() < best_size) {
        best_size = merged.size();
        best = v;
      }
    }
    if (static_cast<int>(best_size) > guards().partition_size) {
      std::string order;
      for (int v : ws.stats.order) order += std::to_string(v) + " ";
      throw GuardError("contraction needs a boundary of " + std::to_string(best_size) + " vertices (limit " +
                       std::to_string(guards().partition_size) + "); best order so far: " + order);
    }
    ws.eliminate_vertex(best);
    pending.erase(best);
  }
  Factor out = ws.finish(net.queries);
  if (stats) *stats = ws.stats;
  return out;
}

Factor contract_network(const FactorNetwork& net, const std::vector<int>& order, ContractionStats* stats) {
  std::set<int> pending = network_vertices(net);
  for (int qv : net.queries) pending.erase(qv);
  std::set<int> given(order.begin(), order.end());
  if (given != pending || order.size() != pending.size()) {
    throw std::invalid_argument("elimination order must list every non-query vertex exactly once");
  }
  Workspace ws{net.factors, {}};
  for (int v : order) ws.eliminate_vertex(v);
  Factor out = ws.finish(net.queries);
  if (stats) *stats = ws.stats;
  return out;
}

FactorNetwork counterexample_network(int n, const Rational& p) {
  Hypergraph h = hollom_instance();
  HyperBunkbed b = hypergraph_bunkbed(h);
  Factor g = gadget_factor(n, p);
  FactorNetwork net;
  std::size_t per_layer = h.hyperedges.size();
  for (std::size_t j = 0; j < b.hyperedges.size(); ++j) {
    const auto& original = h.hyperedges[j % per_layer];
    const auto& placed = b.hyperedges[j];
    int apex = -1;
    std::vector<int> others;
    for (int i = 0; i < 3; ++i) {
      bool post = std::find(h.posts.begin(), h.posts.end(), original[i]) != h.posts.end();
      if (post && apex < 0) apex = placed[i];
      else others.push_back(placed[i]);
    }
    if (apex < 0 || others.size() != 2) throw std::logic_error("each hyperedge needs exactly one post");
    net.factors.push_back(relabel(g, {apex, others[0], others[1]}));
  }
  net.queries = {b.lower[h.u], b.lower[h.v], b.upper[h.v]};
  return net;
}

CounterexamplePolys counterexample_polynomial(int n, const Rational& p) {
  if (n < 1) throw std::invalid_argument("counterexample polynomial needs n >= 1");
  if (!(p > 0 && p < 1)) throw std::invalid_argument("counterexample polynomial needs 0 < p < 1");
  FactorNetwork net = counterexample_network(n, p);
  CounterexamplePolys out;
  out.query_table = contract_network(net, &out.stats);
  const auto& Q = out.query_table;
  for (const auto& [code, e] : Q.table) {
    SetPartition pi = Q.partition(code);
    UPoly w = e.shifted(static_cast<std::size_t>(pi.block_count()));
    out.partition_function += w;
    if (pi.same_block(Q.boundary[0], Q.boundary[1])) out.numerator += w;
    if (pi.same_block(Q.boundary[0], Q.boundary[2])) out.numerator -= w;
  }
  return out;
}

}  // namespace bunkbed

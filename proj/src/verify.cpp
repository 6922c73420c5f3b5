#include "bunkbed/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bunkbed/errors.hpp"
#include "bunkbed/measures.hpp"
#include "bunkbed/roots.hpp"
#include "bunkbed/table2.hpp"
#include "bunkbed/treealg.hpp"

namespace bunkbed {
namespace {

using nlohmann::json;

struct Dsu {
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
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

json rationals(const std::vector<Rational>& v) {
  json j = json::array();
  for (const auto& r : v) j.push_back(to_string(r));
  return j;
}

std::vector<Rational> rationals_from(const json& j) {
  std::vector<Rational> out;
  for (const auto& s : j) out.push_back(parse_rational(s.get<std::string>()));
  return out;
}

std::vector<int> iota_vec(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) out.emplace_back(u, v);
  }
  return out;
}

std::vector<std::array<int, 4>> distinct_quads(int n) {
  std::vector<std::array<int, 4>> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
          out.push_back({a, b, c, d});
        }
  return out;
}

// Collects check outcomes; the first failure becomes the witness.
struct Tally {
  long checks = 0;
  int instances = 0;
  std::optional<json> witness;
  std::vector<std::string> skipped;
  void check(bool ok, const std::function<json()>& describe) {
    ++checks;
    if (!ok && !witness) witness = describe();
  }
};

VerificationReport finish(const std::string& claim, const std::string& instance, const Tally& t, bool conjecture,
                          json extra = json::object()) {
  VerificationReport r;
  r.claim = claim;
  r.instance = instance;
  r.quantities = std::move(extra);
  r.quantities["checks"] = t.checks;
  r.quantities["instances"] = t.instances;
  r.skipped = t.skipped;
  r.witness = t.witness;
  r.verdict = t.witness ? Verdict::fails : conjecture ? Verdict::open_no_violation : Verdict::holds;
  return r;
}

// Bracket counts read from one forest table over all vertices.
class Brackets {
 public:
  explicit Brackets(const Graph& g) : table_(forest_table(g.with_unit_weights(), iota_vec(g.vertex_count()))) {}
  Integer operator()(std::vector<std::vector<int>> blocks, int extra = 0) const {
    return table_.bracket_count(BracketQuery::of(blocks, extra));
  }
  Integer trees() const { return (*this)({}); }

 private:
  ForestTable table_;
};

std::uint64_t pattern_code(std::initializer_list<int> labels) {
  std::uint8_t buf[kMaxPackedElements];
  int k = 0;
  for (int l : labels) buf[k++] = static_cast<std::uint8_t>(l);
  return packed::encode_labels(buf, k);
}

// Arboreal probabilities of the 15 patterns of (a, b, c, d), from per-code weights over all vertices.
std::map<std::uint64_t, Rational> quad_patterns(const std::map<std::uint64_t, Rational>& code_weight, int n,
                                                const std::array<int, 4>& q) {
  std::map<std::uint64_t, Rational> out;
  packed::Rgs rgs{};
  Rational z = 0;
  for (const auto& [code, w] : code_weight) {
    packed::decode(code, n, rgs);
    std::uint8_t lab[4] = {rgs[q[0]], rgs[q[1]], rgs[q[2]], rgs[q[3]]};
    out[packed::encode_labels(lab, 4)] += w;
    z += w;
  }
  for (auto& [c, w] : out) w /= z;
  return out;
}

Rational pattern_prob(const std::map<std::uint64_t, Rational>& probs, std::uint64_t code) {
  auto it = probs.find(code);
  return it == probs.end() ? Rational(0) : it->second;
}

// Per-code arboreal weights at lambda: sum of w * lambda^(n - kappa).
std::map<std::uint64_t, Rational> code_weights(const ForestTable& t, const Rational& lambda) {
  std::map<std::uint64_t, Rational> out;
  int n = t.vertex_count();
  for (const auto& [key, w] : t.entries()) out[key.first] += w.constant_value() * pow(lambda, n - key.second);
  return out;
}

Rational rc_difference(const ConnectivityCensus& c, const Rational& p, const Rational& q) {
  Rational z = 0, same = 0, cross = 0;
  const auto& m = c.marked();  // u1, v1, v2
  for (const auto& [code, w] : c.weights(p, q)) {
    SetPartition pi = SetPartition::from_code(m, code);
    z += w;
    if (pi.same_block(m[0], m[1])) same += w;
    if (pi.same_block(m[0], m[2])) cross += w;
  }
  return (same - cross) / z;
}

std::vector<int> subset_from_mask(int n, unsigned mask) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (mask >> v & 1U) out.push_back(v);
  }
  return out;
}

// isqrt(floor(x2 * 10^(2k))) / 10^k
Rational sqrt_lower(const Rational& x2, int digits) {
  Integer scale = pow(Integer(10), static_cast<unsigned>(digits));
  Integer scaled = x2.get_num() * scale * scale / x2.get_den();
  Integer root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Rational y(root, scale);
  y.canonicalize();
  return y;
}

bool crosses(const std::vector<int>& pos, int a, int b, int c, int d) {
  if (a == c || a == d || b == c || b == d) return false;
  int lo = std::min(pos[a], pos[b]), hi = std::max(pos[a], pos[b]);
  bool c_in = pos[c] > lo && pos[c] < hi;
  bool d_in = pos[d] > lo && pos[d] < hi;
  return c_in != d_in;
}

Graph without_edge(const Graph& g, int f) { return minor(g, {f}, {}); }

// ---- identity suites -------------------------------------------------------

void suite_resistance_bracket(const CatalogEntry& ce, Tally& t) {
  const Graph& g = ce.graph;
  if (g.vertex_count() < 2) return;
  ++t.instances;
  LaplacianBundle lb(g);
  Brackets br(g);
  Integer trees = br.trees();
  for (auto [u, v] : all_pairs(g.vertex_count())) {
    Rational r = lb.resistance(u, v);
    Rational b(br({{u}, {v}}), trees);
    b.canonicalize();
    t.check(r == b, [&] {
      return json{{"instance", ce.name}, {"u", u}, {"v", v}, {"resistance", to_string(r)}, {"bracket_ratio", to_string(b)}};
    });
  }
}

void suite_cross_inner(const CatalogEntry& ce, Tally& t) {
  const Graph& g = ce.graph;
  if (g.vertex_count() < 2) return;
  ++t.instances;
  LaplacianBundle lb(g);
  if (g.vertex_count() < 4) {
    for (auto [a, b] : all_pairs(g.vertex_count())) {
      t.check(lb.cross_inner(a, b, a, b) == lb.resistance(a, b), [&] { return json{{"instance", ce.name}, {"a", a}, {"b", b}}; });
    }
    return;
  }
  Brackets br(g);
  Integer trees = br.trees();
  for (const auto& q : distinct_quads(g.vertex_count())) {
    auto [a, b, c, d] = q;
    Rational lhs = lb.cross_inner(a, b, c, d);
    Rational rhs(br({{a, c}, {b, d}}) - br({{a, d}, {b, c}}), trees);
    rhs.canonicalize();
    t.check(lhs == rhs, [&] {
      return json{{"instance", ce.name}, {"quad", q}, {"cross_inner", to_string(lhs)}, {"bracket_formula", to_string(rhs)}};
    });
  }
}

void suite_pseudoinverse_blocks(const CatalogEntry& ce, Tally& t) {
  const Graph& g = ce.graph;
  if (g.vertex_count() < 2) return;
  ++t.instances;
  RationalMatrix L = laplacian(g);
  RationalMatrix P = pseudoinverse(L);
  std::size_t n = L.rows();
  RationalMatrix centre = RationalMatrix::identity(n) - RationalMatrix::ones(n, n).scaled(Rational(1, static_cast<long>(n)));
  t.check(L * P * L == L, [&] { return json{{"instance", ce.name}, {"relation", "L P L = L"}}; });
  t.check(P * L * P == P, [&] { return json{{"instance", ce.name}, {"relation", "P L P = P"}}; });
  t.check((L * P).is_symmetric() && (P * L).is_symmetric(), [&] { return json{{"instance", ce.name}, {"relation", "symmetry"}}; });
  t.check(L * P == centre, [&] { return json{{"instance", ce.name}, {"relation", "L P = I - J/n"}}; });
  BunkbedPseudoinverse bp = bunkbed_pseudoinverse(g);
  t.check(bp.direct == bp.block_formula, [&] {
    return json{{"instance", ce.name}, {"direct", bp.direct.to_strings()}, {"block_formula", bp.block_formula.to_strings()}};
  });
}

void suite_resistance_matrix(const CatalogEntry& ce, Tally& t) {
  const Graph& g = ce.graph;
  if (g.vertex_count() < 2) return;
  ++t.instances;
  LaplacianBundle lb(g);
  RationalMatrix R = lb.resistance_matrix();
  const RationalMatrix& L = lb.L();
  const RationalMatrix& P = lb.pinv();
  t.check(L * R * L == L.scaled(-2), [&] { return json{{"instance", ce.name}, {"relation", "L R L = -2 L"}}; });
  t.check(P * R * P == (P * P * P).scaled(-2), [&] { return json{{"instance", ce.name}, {"relation", "P R P = -2 P^3"}}; });
}

void suite_bsst(const CatalogEntry& ce, Tally& t) {
  const Graph& g = ce.graph;
  int m = static_cast<int>(g.edge_count());
  if (m < 2) return;
  ++t.instances;
  int n = g.vertex_count();
  // Tree counts through each edge and pair of edges.
  Integer trees = 0;
  std::vector<Integer> through(m, 0);
  std::vector<Integer> both(static_cast<std::size_t>(m * m), 0);
  enumerate_forests(g, [&](const std::vector<char>& in, int comps) {
    if (comps != 1) return;
    ++trees;
    for (int e = 0; e < m; ++e) {
      if (!in[e]) continue;
      ++through[e];
      for (int f = 0; f < m; ++f) {
        if (in[f]) ++both[e * m + f];
      }
    }
  });
  std::optional<Brackets> br;
  if (n >= 4) br.emplace(g);
  for (int e = 0; e < m; ++e) {
    for (int f = 0; f < m; ++f) {
      if (e == f) continue;
      BsstCounts x = bsst_counts(g, e, f);
      Integer lhs = through[e] * through[f] - trees * both[e * m + f];
      Integer diff = x.x_plus - x.x_minus;
      t.check(lhs == diff * diff, [&] {
        return json{{"instance", ce.name}, {"e", e}, {"f", f}, {"lhs", to_string(lhs)},
                    {"x_plus", to_string(x.x_plus)}, {"x_minus", to_string(x.x_minus)}};
      });
      if (!br) continue;
      int a = g.edge(e).u, b = g.edge(e).v, c = g.edge(f).u, d = g.edge(f).v;
      if (a == c || a == d || b == c || b == d) continue;
      // e and f both in the tree: removing them leaves three components, one holding an endpoint of each.
      Integer four = (*br)({{a, c}, {b}, {d}}) + (*br)({{a, d}, {b}, {c}}) + (*br)({{b, c}, {a}, {d}}) + (*br)({{b, d}, {a}, {c}});
      t.check(through[e] == (*br)({{a}, {b}}) && both[e * m + f] == four, [&] {
        return json{{"instance", ce.name}, {"e", e}, {"f", f}, {"relation", "[e] = [a|b], [e,f] = four-bracket sum"}};
      });
    }
  }
}

void suite_choe(const CatalogEntry& ce, Tally& t) {
  const Graph& g = ce.graph;
  if (g.vertex_count() < 4) return;
  ++t.instances;
  Brackets br(g);
  Integer trees = br.trees();
  for (const auto& q : distinct_quads(g.vertex_count())) {
    auto [a, b, c, d] = q;
    Integer lhs = br({{a}, {b}}) * br({{c}, {d}});
    Integer s4 = br({{a}, {b, c}, {d}}) + br({{a}, {b, d}, {c}}) + br({{b}, {a, c}, {d}}) + br({{b}, {a, d}, {c}});
    Integer cross = br({{a, d}, {b, c}}) - br({{a, c}, {b, d}});
    Integer rhs = s4 * trees + cross * cross;
    t.check(lhs == rhs, [&] {
      return json{{"instance", ce.name}, {"quad", q}, {"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}};
    });
  }
}

void suite_strong_rayleigh(const CatalogEntry& ce, Tally& t) {
  const Graph& g = ce.graph;
  if (g.vertex_count() < 4) return;
  ++t.instances;
  Brackets bg(g);
  Integer tg = bg.trees();
  RationalMatrix pg = pseudoinverse(laplacian(g));
  for (int f = 0; f < static_cast<int>(g.edge_count()); ++f) {
    Graph h = without_edge(g, f);
    if (!h.is_connected()) continue;
    Brackets bh(h);
    Integer th = bh.trees();
    PsdCertificate cert = psd_certificate(pseudoinverse(laplacian(h)) - pg);
    t.check(cert.psd, [&] { return json{{"instance", ce.name}, {"removed_edge", f}, {"relation", "L_H^+ - L_G^+ is PSD"}}; });
    for (const auto& q : distinct_quads(g.vertex_count())) {
      auto [a, b, c, d] = q;
      Rational x = Rational(bh({{a}, {b}}), th) - Rational(bg({{a}, {b}}), tg);
      Rational y = Rational(bh({{c}, {d}}), th) - Rational(bg({{c}, {d}}), tg);
      Rational z = Rational(bh({{a, d}, {b, c}}) - bh({{a, c}, {b, d}}), th) -
                   Rational(bg({{a, d}, {b, c}}) - bg({{a, c}, {b, d}}), tg);
      x.canonicalize();
      y.canonicalize();
      z.canonicalize();
      Rational lhs = x * y, rhs = z * z;
      t.check(lhs >= rhs, [&] {
        return json{{"instance", ce.name}, {"removed_edge", f}, {"quad", q}, {"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}};
      });
    }
  }
}

void suite_rayleigh(const CatalogEntry& ce, Tally& t) {
  const Graph& g = ce.graph;
  if (g.vertex_count() < 2) return;
  ++t.instances;
  Brackets bg(g);
  Integer tg = bg.trees();
  for (int f = 0; f < static_cast<int>(g.edge_count()); ++f) {
    Graph h = without_edge(g, f);
    if (!h.is_connected()) continue;
    Brackets bh(h);
    Integer th = bh.trees();
    for (auto [a, b] : all_pairs(g.vertex_count())) {
      Rational rg(bg({{a}, {b}}), tg), rh(bh({{a}, {b}}), th);
      rg.canonicalize();
      rh.canonicalize();
      t.check(rg <= rh, [&] {
        return json{{"instance", ce.name}, {"removed_edge", f}, {"a", a}, {"b", b}, {"G", to_string(rg)}, {"G_minus_f", to_string(rh)}};
      });
    }
  }
}

struct FourPoint {
  Integer lhs, rhs;
};

// Leading-order four-point inequality assembled from [*] and [*]_1 counts.
FourPoint four_point_raw(const Brackets& br, int a, int b, int c, int d) {
  auto S_ab = [&](int x) -> Integer {
    return br({{a}, {b, c, d}}, x) + br({{a, c, d}, {b}}, x) + br({{a, c}, {b, d}}, x) + br({{a, d}, {b, c}}, x);
  };
  auto T_cd = [&](int x) -> Integer {
    return br({{a, b, c}, {d}}, x) + br({{c}, {a, b, d}}, x) + br({{a, c}, {b, d}}, x) + br({{a, d}, {b, c}}, x);
  };
  auto S4 = [&](int x) -> Integer {
    return br({{a}, {b, c}, {d}}, x) + br({{a}, {b, d}, {c}}, x) + br({{b}, {a, d}, {c}}, x) + br({{b}, {a, c}, {d}}, x);
  };
  auto cross = [&](int x) -> Integer { return br({{a, c}, {b, d}}, x) - br({{a, d}, {b, c}}, x); };
  FourPoint fp;
  fp.lhs = S_ab(0) * T_cd(1) + T_cd(0) * S_ab(1);
  fp.rhs = S4(0) * br({{a, b, c, d}}, 1) + S4(1) * br({{a, b, c, d}}, 0) + 2 * cross(0) * cross(1);
  return fp;
}

void suite_four_point(const CatalogEntry& ce, Tally& t) {
  const Graph& g = ce.graph;
  if (g.vertex_count() < 4) return;
  ++t.instances;
  Brackets br(g);
  for (const auto& q : distinct_quads(g.vertex_count())) {
    FourPoint fp = four_point_raw(br, q[0], q[1], q[2], q[3]);
    t.check(fp.lhs <= fp.rhs, [&] {
      return json{{"instance", ce.name}, {"quad", q}, {"lhs", to_string(fp.lhs)}, {"rhs", to_string(fp.rhs)}};
    });
  }
}

void suite_bunkbed_resistance(const CatalogEntry& ce, Tally& t) {
  const Graph& g = ce.graph;
  int n = g.vertex_count();
  if (n < 2) return;
  ++t.instances;
  Graph base = g.with_unit_weights();
  Bunkbed bb = bunkbed(base);
  LaplacianBundle lb(bb.graph);
  RationalMatrix K = inverse(laplacian(base) + RationalMatrix::identity(n).scaled(2));
  Integer trees = all_minors_count(bb.graph, {0}, {0});
  for (int u = 0; u < n; ++u) {
    for (int v = u; v < n; ++v) {
      int u1 = bb.lower[u], v1 = bb.lower[v], v2 = bb.upper[v];
      Rational gap = lb.pinv()(u1, v1) - lb.pinv()(u1, v2);
      t.check(gap == K(u, v) && K(u, v) >= 0, [&] {
        return json{{"instance", ce.name}, {"u", u}, {"v", v}, {"pinv_gap", to_string(gap)}, {"K_uv", to_string(K(u, v))}};
      });
      if (u == v) continue;
      Integer s11 = all_minors_count(bb.graph, {u1, v1}, {u1, v1});
      Integer s12 = all_minors_count(bb.graph, {u1, v2}, {u1, v2});
      Rational bracket_gap(s12 - s11, trees);
      bracket_gap.canonicalize();
      t.check(s11 <= s12 && bracket_gap == 2 * K(u, v), [&] {
        return json{{"instance", ce.name}, {"u", u}, {"v", v}, {"u1|v1", to_string(s11)}, {"u1|v2", to_string(s12)},
                    {"trees", to_string(trees)}};
      });
    }
  }
  // Posts variant: every nonempty proper post set.
  for (unsigned mask = 1; mask + 1 < (1U << n); ++mask) {
    std::vector<int> T = subset_from_mask(n, mask);
    Bunkbed bt = bunkbed(base, T);
    RationalMatrix P = pseudoinverse(laplacian(bt.graph));
    for (int u = 0; u < n; ++u) {
      if (mask >> u & 1U) continue;
      for (int v = u; v < n; ++v) {
        if (mask >> v & 1U) continue;
        Rational gap = P(bt.lower[u], bt.lower[v]) - P(bt.lower[u], bt.upper[v]);
        Rational expected = posts_entry(base, T, u, v);
        t.check(gap == expected && expected >= 0, [&] {
          return json{{"instance", ce.name}, {"posts", T}, {"u", u}, {"v", v}, {"pinv_gap", to_string(gap)},
                      {"LSS_inverse", to_string(expected)}};
        });
      }
    }
  }
}

void suite_weak_limit(const CatalogEntry& ce, Tally& t) {
  const Graph& g = ce.graph;
  int n = g.vertex_count();
  int m = static_cast<int>(g.edge_count());
  if (n < 2) return;
  ++t.instances;
  Graph unit = g.with_unit_weights();
  std::vector<int> all = iota_vec(n);
  // Weights lambda*q: the q^n coefficient of every boundary entry is its forest weight.
  MultiPoly lq = MultiPoly::variable(Var::l) * MultiPoly::variable(Var::q);
  BoundaryTable rc = rc_boundary_table(unit.with_uniform_weight(lq), all);
  ForestTable ft = forest_table(unit, all);
  t.check(rc.total().min_degree(Var::q) == static_cast<unsigned>(n),
          [&] { return json{{"instance", ce.name}, {"relation", "lowest q-degree of Z is n"}}; });
  std::map<std::uint64_t, MultiPoly> forest_by_code;
  for (const auto& [key, w] : ft.entries()) {
    forest_by_code[key.first] += w * MultiPoly::variable(Var::l, static_cast<unsigned>(n - key.second));
  }
  for (const auto& [code, w] : rc.entries) {
    MultiPoly lead = w.coefficient(Var::q, static_cast<unsigned>(n));
    MultiPoly expect = forest_by_code.count(code) ? forest_by_code[code] : MultiPoly();
    t.check(lead == expect, [&] {
      return json{{"instance", ce.name}, {"partition", rc.partition(code).to_string()}, {"rc_leading", lead.to_string()},
                  {"forest_weight", expect.to_string()}};
    });
  }
  // p = t, q = t^2: the lowest t-degree picks out spanning trees; edge marginals are resistances.
  std::size_t stride = static_cast<std::size_t>(n) + 1;
  std::vector<std::uint64_t> all_counts((m + 1) * stride, 0);
  std::vector<std::vector<std::uint64_t>> edge_counts(m, all_counts);
  Integer trees = 0;
  std::vector<Integer> through(m, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Dsu d(n);
    int kappa = n, k = 0;
    for (int e = 0; e < m; ++e) {
      if (mask >> e & 1U) {
        ++k;
        if (d.unite(g.edge(e).u, g.edge(e).v)) --kappa;
      }
    }
    std::size_t idx = k * stride + kappa;
    ++all_counts[idx];
    for (int e = 0; e < m; ++e) {
      if (mask >> e & 1U) ++edge_counts[e][idx];
    }
    if (kappa == 1 && k == n - 1) {
      ++trees;
      for (int e = 0; e < m; ++e) {
        if (mask >> e & 1U) ++through[e];
      }
    }
  }
  std::vector<UPoly> one_minus(m + 1);
  one_minus[0] = UPoly::constant(1);
  UPoly base = UPoly::constant(1) - UPoly::monomial(1, 1);
  for (int j = 1; j <= m; ++j) one_minus[j] = one_minus[j - 1] * base;
  auto build = [&](const std::vector<std::uint64_t>& counts) {
    UPoly p;
    for (int k = 0; k <= m; ++k) {
      for (int c = 0; c <= n; ++c) {
        std::uint64_t cnt = counts[k * stride + c];
        if (cnt) p += (UPoly::monomial(Rational(Integer(static_cast<unsigned long>(cnt))), k + 2 * c) * one_minus[m - k]);
      }
    }
    return p;
  };
  UPoly z = build(all_counts);
  std::size_t low = z.low_degree();
  t.check(low == static_cast<std::size_t>(n + 1) && z.coefficient(low) == Rational(trees),
          [&] { return json{{"instance", ce.name}, {"relation", "Z ~ trees * t^(n+1)"}, {"low_degree", low}}; });
  LaplacianBundle lb(unit);
  for (int e = 0; e < m; ++e) {
    UPoly w = build(edge_counts[e]);
    Rational ratio = w.coefficient(low) / z.coefficient(low);
    Rational expect(through[e], trees);
    expect.canonicalize();
    Rational res = lb.resistance(g.edge(e).u, g.edge(e).v);
    t.check(ratio == expect && ratio == res, [&] {
      return json{{"instance", ce.name}, {"edge", e}, {"leading_ratio", to_string(ratio)}, {"ust_marginal", to_string(expect)},
                  {"resistance", to_string(res)}};
    });
  }
}

void suite_all_minors(const CatalogEntry& ce, Tally& t) {
  const Graph& g = ce.graph;
  int n = g.vertex_count();
  if (n < 2) return;
  ++t.instances;
  std::vector<std::vector<int>> sets;
  for (int a = 0; a < n; ++a) sets.push_back({a});
  for (auto [a, b] : all_pairs(n)) sets.push_back({a, b});
  std::vector<std::vector<int>> forest_parent;  // component root per vertex, one row per forest
  std::vector<int> forest_comps;
  enumerate_forests(g, [&](const std::vector<char>& in, int comps) {
    Dsu d(n);
    for (std::size_t e = 0; e < in.size(); ++e) {
      if (in[e]) d.unite(g.edge(e).u, g.edge(e).v);
    }
    std::vector<int> root(n);
    for (int v = 0; v < n; ++v) root[v] = d.find(v);
    forest_parent.push_back(root);
    forest_comps.push_back(comps);
  });
  for (const auto& S : sets) {
    for (const auto& T : sets) {
      if (S.size() != T.size()) continue;
      Integer det = all_minors_count(g, S, T);
      Integer count = 0;
      for (std::size_t i = 0; i < forest_parent.size(); ++i) {
        if (forest_comps[i] != static_cast<int>(S.size())) continue;
        std::map<int, std::pair<int, int>> per;  // root -> (#S, #T)
        for (int s : S) ++per[forest_parent[i][s]].first;
        for (int x : T) ++per[forest_parent[i][x]].second;
        bool ok = static_cast<int>(per.size()) == forest_comps[i];
        for (const auto& [r, c] : per) ok = ok && c.first == 1 && c.second == 1;
        if (!ok) continue;
        // sign of the matching S -> T (both sorted)
        bool swapped = S.size() == 2 && forest_parent[i][S[0]] != forest_parent[i][T[0]];
        count += swapped ? -1 : 1;
      }
      if (count < 0) count = -count;
      t.check(det == count, [&] {
        return json{{"instance", ce.name}, {"S", S}, {"T", T}, {"determinant", to_string(det)}, {"forests", to_string(count)}};
      });
    }
  }
}

using SuiteFn = void (*)(const CatalogEntry&, Tally&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> s{
      {"resistance-bracket", suite_resistance_bracket},
      {"cross-inner", suite_cross_inner},
      {"pseudoinverse-blocks", suite_pseudoinverse_blocks},
      {"resistance-matrix", suite_resistance_matrix},
      {"bsst", suite_bsst},
      {"choe", suite_choe},
      {"strong-rayleigh", suite_strong_rayleigh},
      {"rayleigh", suite_rayleigh},
      {"four-point-leading", suite_four_point},
      {"bunkbed-resistance", suite_bunkbed_resistance},
      {"weak-limit", suite_weak_limit},
      {"all-minors", suite_all_minors},
  };
  return s;
}

// ---- conjecture scans ------------------------------------------------------

VerificationReport scan_forest_bunkbed(const std::vector<CatalogEntry>& cat, const ScanOptions& o) {
  Tally t;
  Rational best;
  bool have = false;
  BunkbedCheck bc;
  bc.measure = MeasureKind::arboreal;
  bc.grid = o.grid;
  for (const auto& ce : cat) {
    if (ce.graph.vertex_count() < 2 || ce.graph.vertex_count() > o.bunkbed_max_n) continue;
    ++t.instances;
    VerificationReport r = check_bunkbed(ce.graph.with_unit_weights(), ce.name, bc);
    t.checks += r.quantities.value("points", 0L);
    for (const auto& s : r.skipped) t.skipped.push_back(s);
    if (r.failed() && !t.witness) t.witness = r.witness;
    if (r.quantities.contains("min_difference")) {
      Rational d = parse_rational(r.quantities["min_difference"].get<std::string>());
      if (!have || d < best) best = d, have = true;
    }
  }
  json extra;
  if (have) extra["min_difference"] = to_string(best);
  return finish("forest-bunkbed", "", t, true, extra);
}

VerificationReport scan_alt_model(const ScanOptions&) {
  Tally t;
  json extra;
  auto run = [&](const std::string& name, std::optional<std::pair<std::uint64_t, std::uint64_t>> expect) {
    Graph g = named_graph(name);
    int u = g.find_label("u"), v = g.find_label("v");
    AltCounts c = alt_colouring_counts(g, g.posts(), u, v);
    ++t.instances;
    json row{{"rr", c.rr}, {"rb", c.rb}, {"total", c.total}};
    t.check(c.rr >= c.rb, [&] { return json{{"instance", name}, {"counts", row}}; });
    if (expect) {
      t.check(c.rr == expect->first && c.rb == expect->second && c.total == 14,
              [&] { return json{{"instance", name}, {"counts", row}, {"expected", {expect->first, expect->second, 14}}}; });
    }
    extra[name] = row;
    return g;
  };
  run("fig4-left", std::make_pair(6, 4));
  run("fig4-right", std::make_pair(8, 2));
  for (int n = 1; n <= 3; ++n) {
    std::string gname = "fig5-G-" + std::to_string(n);
    Graph g = run(gname, std::nullopt);
    run("fig5-H-" + std::to_string(n), std::nullopt);
    // Both red-red and blue-blue u-v paths: 2^n; crossed pattern [u1v2|u2v1]: 2.
    auto pats = alt_colouring_patterns(g, g.posts(), g.find_label("u"), g.find_label("v"));
    std::uint64_t rr_bb = pats.count(pattern_code({0, 0, 1, 1})) ? pats[pattern_code({0, 0, 1, 1})] : 0;
    std::uint64_t crossed = pats.count(pattern_code({0, 1, 1, 0})) ? pats[pattern_code({0, 1, 1, 0})] : 0;
    extra[gname]["u1v1|u2v2"] = rr_bb;
    extra[gname]["u1v2|u2v1"] = crossed;
    t.check(rr_bb == (std::uint64_t{1} << n) && crossed == 2, [&] {
      return json{{"instance", gname}, {"u1v1|u2v2", rr_bb}, {"u1v2|u2v1", crossed}, {"expected", {1 << n, 2}}};
    });
  }
  return finish("alt-model", "fig4,fig5", t, true, extra);
}

// Three-vertex arboreal inequalities; `event` returns (lhs, rhs) with the claim lhs >= rhs.
template <class F>
VerificationReport scan_triples(const std::string& claim, const std::vector<CatalogEntry>& cat, const ScanOptions& o,
                                bool conjecture, bool outerplanar_only, F inequality) {
  Tally t;
  for (const auto& ce : cat) {
    const Graph& g = ce.graph;
    int n = g.vertex_count();
    if (n < 3) continue;
    if (outerplanar_only && !is_outerplanar(g)) continue;
    ++t.instances;
    Graph unit = g.with_unit_weights();
    ForestTable ft = forest_table(unit, iota_vec(n));
    for (const auto& lambda : o.grid.lambda) {
      auto weights = code_weights(ft, lambda);
      Rational z = 0;
      for (const auto& [c, w] : weights) z += w;
      packed::Rgs rgs{};
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          for (int w = 0; w < n; ++w) {
            if (w == u || w == v) continue;
            Rational uv = 0, uw = 0, wv = 0, all = 0;
            for (const auto& [code, wt] : weights) {
              packed::decode(code, n, rgs);
              bool a = rgs[u] == rgs[v], b = rgs[u] == rgs[w], c = rgs[w] == rgs[v];
              if (a) uv += wt;
              if (b) uw += wt;
              if (c) wv += wt;
              if (b && c) all += wt;
            }
            auto [lhs, rhs] = inequality(uv / z, uw / z, wv / z, all / z);
            t.check(lhs >= rhs, [&] {
              return json{{"instance", ce.name}, {"lambda", to_string(lambda)}, {"u", u}, {"v", v}, {"w", w},
                          {"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}};
            });
          }
        }
      }
    }
  }
  VerificationReport r = finish(claim, "", t, conjecture);
  r.grid = {{"lambda", rationals(o.grid.lambda)}};
  return r;
}

VerificationReport scan_kgw(const std::vector<CatalogEntry>& cat, const ScanOptions& o) {
  Tally t;
  for (const auto& ce : cat) {
    const Graph& g = ce.graph;
    int m = static_cast<int>(g.edge_count());
    if (m < 2) continue;
    ++t.instances;
    int n = g.vertex_count();
    // Forest counts by size: overall, through e, through e and f.
    std::vector<Integer> all(n, 0);
    std::vector<std::vector<Integer>> one(m, all);
    std::vector<std::vector<Integer>> two(static_cast<std::size_t>(m * m), all);
    enumerate_forests(g, [&](const std::vector<char>& in, int comps) {
      int k = n - comps;
      ++all[k];
      for (int e = 0; e < m; ++e) {
        if (!in[e]) continue;
        ++one[e][k];
        for (int f = e + 1; f < m; ++f) {
          if (in[f]) ++two[e * m + f][k];
        }
      }
    });
    for (const auto& lambda : o.grid.lambda) {
      auto eval = [&](const std::vector<Integer>& c) {
        Rational s = 0, x = 1;
        for (int k = 0; k < n; ++k, x *= lambda) s += Rational(c[k]) * x;
        return s;
      };
      Rational z = eval(all);
      std::vector<Rational> pe(m);
      for (int e = 0; e < m; ++e) pe[e] = eval(one[e]) / z;
      for (int e = 0; e < m; ++e) {
        for (int f = e + 1; f < m; ++f) {
          Rational joint = eval(two[e * m + f]) / z;
          Rational prod = pe[e] * pe[f];
          t.check(prod >= joint, [&] {
            return json{{"instance", ce.name}, {"lambda", to_string(lambda)}, {"e", e}, {"f", f},
                        {"product", to_string(prod)}, {"joint", to_string(joint)}};
          });
        }
      }
    }
  }
  VerificationReport r = finish("kgw", "", t, true);
  r.grid = {{"lambda", rationals(o.grid.lambda)}};
  return r;
}

VerificationReport scan_four_point(const std::vector<CatalogEntry>& cat, const ScanOptions&) {
  Tally t;
  for (const auto& ce : cat) suite_four_point(ce, t);
  return finish("four-point-leading", "", t, false);
}

VerificationReport scan_final_conjecture(const ScanOptions& o) {
  Tally t;
  std::mt19937_64 rng(o.seed);
  std::uint64_t p_a_bc_d = pattern_code({0, 1, 1, 2}), p_a_bd_c = pattern_code({0, 1, 2, 1});
  std::uint64_t p_b_ac_d = pattern_code({0, 1, 0, 2}), p_b_ad_c = pattern_code({0, 1, 2, 0});
  std::uint64_t p_abcd = pattern_code({0, 0, 0, 0});
  std::uint64_t p_ac_bd = pattern_code({0, 1, 0, 1}), p_ad_bc = pattern_code({0, 1, 1, 0});
  json weightings = json::array();
  for (int n : {4, 5}) {
    Graph base = named_graph("K" + std::to_string(n));
    for (int w = 0; w < o.weightings; ++w) {
      Graph g(n);
      std::vector<std::string> ws;
      for (const auto& e : base.edges()) {
        long num = static_cast<long>(rng() % 9 + 1);
        long den = static_cast<long>(rng() % 9 + 1);
        Rational r(num, den);
        r.canonicalize();
        g.add_edge(e.u, e.v, MultiPoly(r));
        ws.push_back(to_string(r));
      }
      weightings.push_back({{"graph", "K" + std::to_string(n)}, {"weights", ws}});
      ++t.instances;
      ForestTable ft = forest_table(g, iota_vec(n));
      for (const auto& lambda : o.grid.lambda) {
        auto weights = code_weights(ft, lambda);
        for (const auto& q : distinct_quads(n)) {
          auto pr = quad_patterns(weights, n, q);
          auto prob = [&](std::uint64_t c) { return pattern_prob(pr, c); };
          Rational sep_ab = 0, sep_cd = 0;
          packed::Rgs r4{};
          for (const auto& [code, p] : pr) {
            packed::decode(code, 4, r4);
            if (r4[0] != r4[1]) sep_ab += p;
            if (r4[2] != r4[3]) sep_cd += p;
          }
          Rational lhs = sep_ab * sep_cd;
          Rational s4 = prob(p_a_bc_d) + prob(p_a_bd_c) + prob(p_b_ac_d) + prob(p_b_ad_c);
          Rational cross = prob(p_ac_bd) - prob(p_ad_bc);
          Rational rhs = s4 * prob(p_abcd) + cross * cross;
          t.check(lhs >= rhs, [&] {
            return json{{"graph", "K" + std::to_string(n)}, {"weights", ws}, {"seed", o.seed}, {"weighting", w},
                        {"lambda", to_string(lambda)}, {"quad", q}, {"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}};
          });
        }
      }
    }
  }
  VerificationReport r = finish("final-conjecture", "K4,K5 random weights", t, true, {{"weightings", weightings}});
  r.grid = {{"lambda", rationals(o.grid.lambda)}, {"seed", o.seed}, {"weightings", o.weightings}};
  return r;
}

}  // namespace

// ---- public API ------------------------------------------------------------

Grid Grid::defaults() {
  Grid g;
  for (int i = 1; i <= 9; ++i) g.p.emplace_back(i, 10);
  for (const char* s : {"1/2", "1", "3/2", "2", "3"}) g.q.push_back(parse_rational(s));
  for (const char* s : {"1/10", "1/2", "1", "2", "10"}) g.lambda.push_back(parse_rational(s));
  return g;
}

json Grid::to_json() const { return {{"p", rationals(p)}, {"q", rationals(q)}, {"lambda", rationals(lambda)}}; }

Grid Grid::from_json(const json& j) {
  Grid g = defaults();
  if (j.contains("p")) g.p = rationals_from(j.at("p"));
  if (j.contains("q")) g.q = rationals_from(j.at("q"));
  if (j.contains("lambda")) g.lambda = rationals_from(j.at("lambda"));
  return g;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_rational(item));
  }
  if (out.empty()) throw std::invalid_argument("empty rational list");
  return out;
}

std::string measure_name(MeasureKind m) {
  switch (m) {
    case MeasureKind::random_cluster: return "random-cluster";
    case MeasureKind::arboreal: return "arboreal";
    case MeasureKind::percolation: return "percolation";
  }
  return "?";
}

MeasureKind parse_measure(const std::string& s) {
  if (s == "random-cluster" || s == "rc") return MeasureKind::random_cluster;
  if (s == "arboreal" || s == "forest") return MeasureKind::arboreal;
  if (s == "percolation") return MeasureKind::percolation;
  throw std::invalid_argument("unknown measure '" + s + "' (random-cluster, arboreal, percolation)");
}

VerificationReport check_bunkbed(const Graph& g, const std::string& instance, const BunkbedCheck& opts) {
  VerificationReport r;
  r.claim = opts.measure == MeasureKind::arboreal ? "forest-bunkbed"
            : opts.measure == MeasureKind::percolation ? "percolation-bunkbed"
                                                       : "rc-bunkbed";
  r.instance = instance;
  if (opts.posts) r.instance += " posts{" + [&] {
      std::string s;
      for (int t : *opts.posts) s += (s.empty() ? "" : ",") + g.label(t);
      return s;
    }() + "}";
  Bunkbed b = opts.posts ? bunkbed(g, *opts.posts) : bunkbed(g);
  auto pairs = opts.pairs.empty() ? all_pairs(g.vertex_count()) : opts.pairs;
  std::vector<Rational> ps = opts.grid.p, qs = opts.grid.q;
  if (opts.measure == MeasureKind::percolation) qs = {Rational(1)};
  if (opts.measure == MeasureKind::arboreal) r.grid = {{"lambda", rationals(opts.grid.lambda)}};
  else r.grid = {{"p", rationals(ps)}, {"q", rationals(qs)}};
  Rational best;
  json best_at;
  bool have = false;
  long points = 0;
  auto record = [&](const Rational& d, json at) {
    ++points;
    if (!have || d < best) {
      best = d;
      best_at = std::move(at);
      have = true;
    }
  };
  for (auto [u, v] : pairs) {
    int u1 = b.lower[u], u2 = b.upper[u], v1 = b.lower[v], v2 = b.upper[v];
    json pair{{"u", g.label(u)}, {"v", g.label(v)}};
    try {
      if (u1 == u2 || v1 == v2) {
        // A post endpoint makes both events coincide by layer symmetry.
        record(Rational(0), {{"pair", pair}, {"reason", "post endpoint"}});
        continue;
      }
      if (opts.measure == MeasureKind::arboreal) {
        ForestTable ft = forest_table(b.graph.with_unit_weights(), {u1, v1, v2});
        for (const auto& lambda : opts.grid.lambda) {
          Rational same = ft.probability(lambda, [&](const SetPartition& pi) { return pi.same_block(u1, v1); });
          Rational cross = ft.probability(lambda, [&](const SetPartition& pi) { return pi.same_block(u1, v2); });
          record(same - cross, {{"pair", pair}, {"lambda", to_string(lambda)}});
        }
      } else {
        ConnectivityCensus census(b.graph, {u1, v1, v2});
        for (const auto& q : qs) {
          for (const auto& p : ps) record(rc_difference(census, p, q), {{"pair", pair}, {"p", to_string(p)}, {"q", to_string(q)}});
        }
      }
    } catch (const GuardError& e) {
      r.skipped.push_back(instance + " (" + g.label(u) + "," + g.label(v) + "): " + e.what() +
                          "; large bunkbeds need the glue contraction engine");
    }
  }
  r.quantities["points"] = points;
  r.quantities["pairs"] = pairs.size();
  if (have) {
    r.quantities["min_difference"] = to_string(best);
    r.quantities["argmin"] = best_at;
  }
  bool violated = have && best < 0;
  if (violated) {
    r.witness = json{{"graph", graph_to_json(g)}, {"at", best_at}, {"difference", to_string(best)}};
    if (opts.posts) (*r.witness)["posts"] = *opts.posts;
  }
  r.verdict = violated ? Verdict::fails : opts.measure == MeasureKind::arboreal ? Verdict::open_no_violation : Verdict::holds;
  r.request = json{{"kind", "bunkbed"}, {"graph_json", graph_to_json(g)}, {"graph_name", instance},
                   {"measure", measure_name(opts.measure)}, {"grid", opts.grid.to_json()}};
  if (opts.posts) r.request["posts"] = *opts.posts;
  if (!opts.pairs.empty()) r.request["pairs"] = opts.pairs;
  return r;
}

namespace {
unsigned bunkbed_order(const Graph& g, const std::vector<int>& posts) {
  std::vector<int> t = posts;
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return 2U * static_cast<unsigned>(g.vertex_count()) - static_cast<unsigned>(t.size());
}

Rational threshold_bound(const Graph& g, const std::vector<int>& posts, const Rational& q) {
  return pow(q, 2 * bunkbed_order(g, posts)) / pow(Rational(2), static_cast<unsigned>(g.edge_count()) + 2);
}
}  // namespace

Rational p_threshold(const Graph& g, const std::vector<int>& posts, const Rational& q) {
  // ((1-p)/p)^2 <= bound; y <= sqrt(bound) to ~6 significant digits, p = 1/(1+y).
  Rational bound = threshold_bound(g, posts, q);
  int digits = 6;
  Rational y = sqrt_lower(bound, digits);
  while (y == 0 || (bound - y * y) * 1000000 > bound) y = sqrt_lower(bound, digits += 2);
  return 1 / (1 + y);
}

VerificationReport check_p_threshold(const Graph& g, const std::string& instance, const std::vector<int>& posts,
                                     const Rational& q) {
  Rational p0 = p_threshold(g, posts, q);
  Rational y = (1 - p0) / p0;
  bool certified = y * y <= threshold_bound(g, posts, q);
  BunkbedCheck bc;
  bc.posts = posts;
  bc.grid.p = {p0, (p0 + 1) / 2, (p0 + 3) / 4};
  bc.grid.q = {q};
  VerificationReport r = check_bunkbed(g, instance, bc);
  r.claim = "p-threshold";
  r.quantities["threshold_p"] = to_string(p0);
  r.quantities["threshold_certified"] = certified;
  r.quantities["bunkbed_vertices"] = bunkbed_order(g, posts);
  bool zero_at_one = true;
  if (!posts.empty()) {
    // Every edge open: with a post present both events are certain.
    Bunkbed b = bunkbed(g, posts);
    for (auto [u, v] : all_pairs(g.vertex_count())) {
      int u1 = b.lower[u], u2 = b.upper[u], v1 = b.lower[v], v2 = b.upper[v];
      if (u1 == u2 || v1 == v2) continue;
      ConnectivityCensus census(b.graph, {u1, v1, v2});
      if (rc_difference(census, Rational(1), q) != 0) zero_at_one = false;
    }
    r.quantities["difference_at_p1_zero"] = zero_at_one;
  }
  if (!certified || !zero_at_one) {
    if (!r.witness) r.witness = json{{"graph", graph_to_json(g)}, {"posts", posts}, {"q", to_string(q)}};
    r.verdict = Verdict::fails;
  }
  r.request = json{{"kind", "threshold"}, {"graph_json", graph_to_json(g)}, {"graph_name", instance},
                   {"posts", posts}, {"q", to_string(q)}};
  return r;
}

BsstCounts bsst_counts(const Graph& g, int e, int f) {
  int n = g.vertex_count();
  int m = static_cast<int>(g.edge_count());
  if (e == f) throw std::invalid_argument("bsst edges must differ");
  if (e < 0 || f < 0 || e >= m || f >= m) throw std::out_of_range("edge index out of range");
  if (!g.is_connected()) throw std::invalid_argument("bsst counts need a connected graph");
  if (m > guards().subset_edges) throw GuardError("bsst enumeration over " + std::to_string(m) + " edges exceeds the subset guard");
  BsstCounts out;
  if (m < n) return out;
  std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  std::uint64_t limit = std::uint64_t{1} << m;
  while (mask < limit) {
    if ((mask >> e & 1U) && (mask >> f & 1U)) {
      Dsu d(n);
      int comps = n;
      for (int i = 0; i < m; ++i) {
        if (mask >> i & 1U && d.unite(g.edge(i).u, g.edge(i).v)) --comps;
      }
      if (comps == 1) {
        // Peel leaves; what remains is the unique cycle.
        std::vector<int> deg(n, 0);
        std::vector<char> alive(m, 0);
        for (int i = 0; i < m; ++i) {
          if (mask >> i & 1U) {
            alive[i] = 1;
            ++deg[g.edge(i).u];
            ++deg[g.edge(i).v];
          }
        }
        bool changed = true;
        while (changed) {
          changed = false;
          for (int i = 0; i < m; ++i) {
            if (alive[i] && (deg[g.edge(i).u] == 1 || deg[g.edge(i).v] == 1)) {
              alive[i] = 0;
              --deg[g.edge(i).u];
              --deg[g.edge(i).v];
              changed = true;
            }
          }
        }
        if (alive[e] && alive[f]) {
          int at = g.edge(e).v, prev = e;
          bool same = false;
          while (true) {
            int next = -1;
            for (int i = 0; i < m; ++i) {
              if (alive[i] && i != prev && (g.edge(i).u == at || g.edge(i).v == at)) {
                next = i;
                break;
              }
            }
            if (next == e) break;
            if (next == f) same = g.edge(f).u == at;
            at = g.edge(next).u == at ? g.edge(next).v : g.edge(next).u;
            prev = next;
          }
          ++(same ? out.x_plus : out.x_minus);
        }
      }
    }
    // next subset with the same popcount
    std::uint64_t c = mask & -mask, r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  return out;
}

bool is_outerplanar(const Graph& g) {
  int n = g.vertex_count();
  if (n <= 3) return true;
  if (n > 9) throw GuardError("outerplanarity brute force is limited to 9 vertices");
  std::vector<int> order = iota_vec(n), pos(n);
  do {
    if (order[0] != 0) break;
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    bool ok = true;
    for (std::size_t i = 0; i < g.edge_count() && ok; ++i) {
      for (std::size_t j = i + 1; j < g.edge_count() && ok; ++j) {
        const Edge& x = g.edge(i);
        const Edge& y = g.edge(j);
        if (crosses(pos, x.u, x.v, y.u, y.v)) ok = false;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return false;
}

std::vector<std::string> identity_suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : suites()) out.push_back(name);
  return out;
}

VerificationReport run_identity_suite(const std::string& suite, const std::vector<CatalogEntry>& instances,
                                      const std::string& instance_label) {
  auto it = std::find_if(suites().begin(), suites().end(), [&](const auto& s) { return s.first == suite; });
  if (it == suites().end()) throw std::invalid_argument("unknown identity suite '" + suite + "'");
  Tally t;
  for (const auto& ce : instances) {
    try {
      it->second(ce, t);
    } catch (const GuardError& e) {
      t.skipped.push_back(ce.name + ": " + e.what());
    }
  }
  return finish(suite, instance_label, t, false);
}

std::vector<std::string> conjecture_names() {
  return {"forest-bunkbed", "alt-model", "outerplanar-three-point", "harris2", "kgw", "four-point", "final-conjecture"};
}

VerificationReport scan_conjecture(const std::string& name, const std::vector<CatalogEntry>& catalog,
                                   const ScanOptions& opts, const std::string& instance_label) {
  VerificationReport r;
  if (name == "forest-bunkbed") {
    r = scan_forest_bunkbed(catalog, opts);
  } else if (name == "alt-model") {
    return scan_alt_model(opts);
  } else if (name == "outerplanar-three-point") {
    r = scan_triples("outerplanar-three-point", catalog, opts, false, true,
                     [](const Rational& uv, const Rational& uw, const Rational& wv, const Rational&) {
                       return std::make_pair(uv, Rational(uw * wv));
                     });
  } else if (name == "harris2") {
    r = scan_triples("harris2", catalog, opts, true, false,
                     [](const Rational&, const Rational& uw, const Rational& wv, const Rational& all) {
                       return std::make_pair(all, Rational(uw * wv));
                     });
  } else if (name == "kgw") {
    r = scan_kgw(catalog, opts);
  } else if (name == "four-point") {
    r = scan_four_point(catalog, opts);
  } else if (name == "final-conjecture") {
    return scan_final_conjecture(opts);
  } else {
    throw std::invalid_argument("unknown conjecture scan '" + name + "'");
  }
  r.instance = instance_label;
  return r;
}

std::vector<VerificationReport> scan_conjectures(const std::vector<CatalogEntry>& catalog, const ScanOptions& opts) {
  std::vector<VerificationReport> out;
  for (const auto& name : conjecture_names()) out.push_back(scan_conjecture(name, catalog, opts));
  return out;
}

VerificationReport check_hypergraph_factor() {
  Hypergraph h = hollom_instance();
  HypergraphConnection hc = hypergraph_connection(h, h.u, h.v);
  MultiPoly diff = hc.difference();
  MultiPoly cubic = MultiPoly::parse("q^3 - 5*q^2 + 10*q - 7");
  MultiPoly target = MultiPoly::parse("g^6*h^6*q^5") * cubic;
  VerificationReport r;
  r.claim = "hypergraph-factor";
  r.instance = "hollom";
  r.quantities["difference"] = diff.to_string();
  // c from leading terms, then exact equality of the whole polynomial.
  Rational c = 0;
  if (!diff.is_zero()) c = diff.terms().rbegin()->second / target.terms().rbegin()->second;
  bool ok = !diff.is_zero() && c > 0 && diff == target * MultiPoly(c);
  r.quantities["c"] = to_string(c);
  Rational at1 = poly_eval(diff, {{Var::q, 1}, {Var::g, 1}, {Var::h, 1}});
  r.quantities["difference_at_q1_g1_h1"] = to_string(at1);
  r.verdict = ok && at1 < 0 ? Verdict::holds : Verdict::fails;
  if (r.failed()) r.witness = json{{"difference", diff.to_string()}, {"expected_shape", target.to_string()}};
  r.request = json{{"kind", "hypergraph-factor"}};
  return r;
}

VerificationReport check_root143() {
  UPoly cubic = UPoly::from_multipoly(MultiPoly::parse("q^3 - 5*q^2 + 10*q - 7"));
  auto roots = isolate_roots(cubic, Rational(0), Rational(10), Rational(1, 1000));
  VerificationReport r;
  r.claim = "root143";
  r.instance = "q^3 - 5q^2 + 10q - 7 on (0, 10)";
  json iv = json::array();
  for (const auto& x : roots) iv.push_back({to_string(x.low), to_string(x.high)});
  r.quantities["roots"] = iv;
  bool ok = roots.size() == 1 && roots[0].low >= Rational(71, 50) && roots[0].high <= Rational(36, 25) &&
            roots[0].multiplicity == 1 && cubic.sign_at(roots[0].low) * cubic.sign_at(roots[0].high) < 0;
  if (ok) {
    r.quantities["low_decimal"] = truncate_decimal(roots[0].low, 4);
    r.quantities["high_decimal"] = truncate_decimal(roots[0].high, 4);
  }
  r.verdict = ok ? Verdict::holds : Verdict::fails;
  if (!ok) r.witness = json{{"roots", iv}};
  r.request = json{{"kind", "root143"}};
  return r;
}

std::vector<CatalogEntry> resolve_instances(const json& req) {
  if (req.contains("graph_json")) {
    Graph g = graph_from_json(req.at("graph_json"));
    return {{req.value("graph_name", std::string("input")), g}};
  }
  if (req.contains("graph")) {
    std::string name = req.at("graph").get<std::string>();
    return {{name, named_graph(name)}};
  }
  std::string cat = req.value("catalog", std::string("small5"));
  if (cat.rfind("small", 0) != 0) throw std::invalid_argument("unknown catalog '" + cat + "' (use small<N>)");
  int n = std::stoi(cat.substr(5));
  return catalog(n, req.value("named", true));
}

namespace {
std::string instance_label(const json& req) {
  if (req.contains("graph_json")) return req.value("graph_name", std::string("input"));
  if (req.contains("graph")) return req.at("graph").get<std::string>();
  return req.value("catalog", std::string("small5"));
}
}  // namespace

VerificationReport run_request(const json& req) {
  std::string kind = req.at("kind").get<std::string>();
  VerificationReport r;
  if (kind == "bunkbed") {
    auto inst = resolve_instances(req);
    if (inst.size() != 1) throw std::invalid_argument("bunkbed check takes a single graph");
    BunkbedCheck bc;
    bc.measure = parse_measure(req.value("measure", std::string("random-cluster")));
    bc.grid = Grid::from_json(req.value("grid", json::object()));
    if (req.contains("posts")) bc.posts = req.at("posts").get<std::vector<int>>();
    if (req.contains("pairs")) bc.pairs = req.at("pairs").get<std::vector<std::pair<int, int>>>();
    r = check_bunkbed(inst[0].graph, inst[0].name, bc);
  } else if (kind == "threshold") {
    auto inst = resolve_instances(req);
    if (inst.size() != 1) throw std::invalid_argument("threshold check takes a single graph");
    r = check_p_threshold(inst[0].graph, inst[0].name, req.value("posts", std::vector<int>{}),
                          parse_rational(req.value("q", std::string("2"))));
  } else if (kind == "identity") {
    r = run_identity_suite(req.at("suite").get<std::string>(), resolve_instances(req), instance_label(req));
  } else if (kind == "conjecture") {
    ScanOptions o;
    o.grid = Grid::from_json(req.value("grid", json::object()));
    o.seed = req.value("seed", std::uint64_t{1});
    o.weightings = req.value("weightings", 20);
    o.bunkbed_max_n = req.value("bunkbed_max_n", 4);
    r = scan_conjecture(req.at("name").get<std::string>(), resolve_instances(req), o, instance_label(req));
  } else if (kind == "hypergraph-factor") {
    r = check_hypergraph_factor();
  } else if (kind == "root143") {
    r = check_root143();
  } else if (kind == "table2") {
    r = table2_report(req.at("n").get<std::vector<int>>(), parse_rational(req.value("p", std::string("1/100"))));
  } else {
    throw std::invalid_argument("unknown request kind '" + kind + "'");
  }
  r.request = req;
  return r;
}

}  // namespace bunkbed

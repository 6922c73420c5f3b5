#include "bunkbed/roots.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace bunkbed {
namespace {

using Dense = std::vector<Rational>;

constexpr int kSturmMaxDegree = 16;
constexpr int kMaxDepth = 400;

Dense to_dense(const UPoly& p) {
  Dense d(p.degree() + 1);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = p.coefficient(i);
  return d;
}

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Dense derivative(const Dense& a) {
  Dense d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
  return d;
}

Dense remainder(Dense a, const Dense& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

// Positive rescaling keeps signs intact and stops coefficient blow-up.
void make_monic_abs(Dense& a) {
  if (a.empty()) return;
  Rational lc = abs(a.back());
  for (auto& x : a) x /= lc;
}

Dense gcd_dense(Dense a, Dense b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Dense r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic_abs(a);
  return a;
}

int sign_dense(const Dense& a, const Rational& x) {
  Rational acc = 0;
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * x + a[k];
  return sgn(acc);
}

class Sturm {
 public:
  explicit Sturm(const Dense& p) {
    Dense a = p, b = derivative(p);
    make_monic_abs(a);
    make_monic_abs(b);
    seq_.push_back(a);
    while (!b.empty()) {
      seq_.push_back(b);
      Dense r = remainder(a, b);
      for (auto& x : r) x = -x;
      make_monic_abs(r);
      a = std::move(b);
      b = std::move(r);
    }
  }
  int variations(const Rational& x) const {
    int count = 0, last = 0;
    for (const auto& s : seq_) {
      int v = sign_dense(s, x);
      if (v == 0) continue;
      if (last != 0 && v != last) ++count;
      last = v;
    }
    return count;
  }
  // Distinct roots in the open interval (a, b).
  int count_open(const Rational& a, const Rational& b) const {
    int c = variations(a) - variations(b);
    if (sign_dense(seq_.front(), b) == 0) --c;
    return c;
  }

 private:
  std::vector<Dense> seq_;
};

// ---- Descartes subdivision on integer polynomials mapped to (0, 1) ----

using IntPoly = std::vector<Integer>;

void taylor_shift(IntPoly& c, const Integer& s) {
  std::size_t n = c.size();
  if (n < 2 || s == 0) return;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) {
      if (s == 1) c[j] += c[j + 1];
      else mpz_addmul(c[j].get_mpz_t(), c[j + 1].get_mpz_t(), s.get_mpz_t());
    }
  }
}

void remove_content(IntPoly& c) {
  Integer g = 0;
  for (const auto& x : c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1) {
    for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

int sign_variations(const IntPoly& c) {
  int count = 0, last = 0;
  for (const auto& x : c) {
    int v = sgn(x);
    if (v == 0) continue;
    if (last != 0 && v != last) ++count;
    last = v;
  }
  return count;
}

// Roots of Q in (0,1) correspond to positive roots of (x+1)^d Q(1/(x+1)).
int variations_unit(const IntPoly& q) {
  IntPoly r(q.rbegin(), q.rend());
  taylor_shift(r, 1);
  return sign_variations(r);
}

// Q(x) ~ P(a + (b - a) x) with a positive integer scaling.
IntPoly map_to_unit(const UPoly& p, const Rational& a, const Rational& b) {
  const auto& num = p.numerators();
  std::size_t d = num.size() - 1;
  Integer D = a.get_den() * b.get_den() / gcd(a.get_den(), b.get_den());
  Integer A = a.get_num() * (D / a.get_den());
  Integer B = b.get_num() * (D / b.get_den());
  IntPoly c(num.size());
  Integer dp = 1;
  for (std::size_t i = d + 1; i-- > 0;) {
    c[i] = num[i] * dp;
    dp *= D;
  }
  taylor_shift(c, A);
  Integer w = B - A, wp = 1;
  for (auto& x : c) {
    x *= wp;
    wp *= w;
  }
  remove_content(c);
  return c;
}

// Split Q on (0,1) at s/r: left(x) = r^d Q(s x / r), right(x) = r^d Q((s + (r - s) x) / r).
void split_unit(const IntPoly& q, const Integer& s, const Integer& r, IntPoly& left, IntPoly& right) {
  std::size_t d = q.size() - 1;
  IntPoly h(q.size());
  Integer rp = 1;
  for (std::size_t i = d + 1; i-- > 0;) {
    h[i] = q[i] * rp;
    rp *= r;
  }
  left = h;
  Integer sp = 1;
  for (auto& x : left) {
    x *= sp;
    sp *= s;
  }
  right = std::move(h);
  taylor_shift(right, s);
  Integer w = r - s, wp = 1;
  for (auto& x : right) {
    x *= wp;
    wp *= w;
  }
  remove_content(left);
  remove_content(right);
}

struct Cell {
  Rational a, b;
};

// Split ratios tried in order, avoiding rational roots at the split point.
const std::pair<long, long> kSplits[] = {{1, 2}, {7, 16}, {9, 16}, {3, 8}, {5, 8}, {13, 32}, {19, 32}};

struct Found {
  Rational low, high;
  int count;  // exact for Sturm; Descartes bound for clusters
};

std::vector<Found> subdivide_descartes(const UPoly& p, const Rational& lo, const Rational& hi) {
  struct Node {
    IntPoly q;
    Rational a, b;
    int depth;
  };
  std::vector<Found> out;
  std::vector<Node> stack;
  stack.push_back({map_to_unit(p, lo, hi), lo, hi, 0});
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    int v = variations_unit(node.q);
    if (v == 0) continue;
    if (v == 1 || node.depth >= kMaxDepth) {
      out.push_back({node.a, node.b, v});
      continue;
    }
    bool split = false;
    for (auto [s, r] : kSplits) {
      Rational m = node.a + (node.b - node.a) * Rational(s, r);
      if (p.sign_at(m) == 0) continue;
      IntPoly left, right;
      split_unit(node.q, Integer(s), Integer(r), left, right);
      stack.push_back({std::move(right), m, node.b, node.depth + 1});
      stack.push_back({std::move(left), node.a, m, node.depth + 1});
      split = true;
      break;
    }
    if (!split) throw std::runtime_error("root isolation could not find a non-root split point");
  }
  return out;
}

std::vector<Found> subdivide_sturm(const Sturm& st, const UPoly& p, const Rational& lo, const Rational& hi) {
  std::vector<Found> out;
  std::vector<Cell> stack{{lo, hi}};
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    int n = st.count_open(c.a, c.b);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back({c.a, c.b, 1});
      continue;
    }
    bool split = false;
    for (auto [s, r] : kSplits) {
      Rational m = c.a + (c.b - c.a) * Rational(s, r);
      if (p.sign_at(m) == 0) {
        // A rational root sits exactly here; it becomes its own bracket below.
        continue;
      }
      stack.push_back({m, c.b});
      stack.push_back({c.a, m});
      split = true;
      break;
    }
    if (!split) throw std::runtime_error("root isolation could not find a non-root split point");
  }
  return out;
}

// One bisection step on a bracket holding one distinct root. Returns false
// when the bracket cannot be shrunk (even-multiplicity cluster, no Sturm).
bool bisect_once(const UPoly& p, const Sturm* st, Rational& low, Rational& high, const Rational& width) {
  int sl = p.sign_at(low);
  int sh = p.sign_at(high);
  Rational m = (low + high) / 2;
  int sm = p.sign_at(m);
  if (sm == 0) {
    Rational eps = std::min(Rational(width / 4), Rational((high - low) / 4));
    low = m - eps;
    high = m + eps;
    return true;
  }
  bool left_has_root;
  if (sl != 0 && sh != 0 && sl != sh) {
    left_has_root = sm != sl;
  } else if (st != nullptr) {
    left_has_root = st->count_open(low, m) > 0;
  } else {
    return false;
  }
  if (left_has_root) high = m;
  else low = m;
  return true;
}

// Also pulls brackets off the domain edges so every gap has an interior sample point.
void refine(const UPoly& p, const Sturm* st, Rational& low, Rational& high, const Rational& width,
            bool avoid_zero, const Rational& lo, const Rational& hi) {
  while (high - low >= width || (avoid_zero && low <= 0 && 0 <= high) || low == lo || high == hi) {
    if (!bisect_once(p, st, low, high, width)) return;
  }
}

}  // namespace

int sturm_count(const UPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw std::invalid_argument("Sturm count of the zero polynomial");
  Sturm st(to_dense(p));
  return st.variations(a) - st.variations(b);
}

int descartes_bound(const UPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw std::invalid_argument("Descartes bound of the zero polynomial");
  if (!(a < b)) throw std::invalid_argument("Descartes bound needs a < b");
  return variations_unit(map_to_unit(p, a, b));
}

std::vector<IsolatingInterval> isolate_roots(const UPoly& p_in, const Rational& lo, const Rational& hi,
                                             const Rational& width, RootMethod method) {
  if (p_in.is_zero()) throw std::invalid_argument("cannot isolate roots of the zero polynomial");
  if (!(width > 0)) throw std::invalid_argument("isolation width must be positive");
  if (!(lo < hi)) throw std::invalid_argument("empty isolation domain");

  // Factor out q^k; zero is reported separately if it lies inside the domain.
  std::size_t k = p_in.low_degree();
  std::vector<Integer> nums(p_in.numerators().begin() + static_cast<std::ptrdiff_t>(k), p_in.numerators().end());
  UPoly p = UPoly::from_integers(nums, 1);
  bool zero_inside = k > 0 && lo < 0 && 0 < hi;

  if (method == RootMethod::automatic) {
    method = p.degree() <= kSturmMaxDegree ? RootMethod::sturm : RootMethod::descartes;
  }
  std::vector<IsolatingInterval> roots;
  if (p.degree() >= 1) {
    std::unique_ptr<Sturm> st;
    std::vector<Found> found;
    if (method == RootMethod::sturm) {
      st = std::make_unique<Sturm>(to_dense(p));
      found = subdivide_sturm(*st, p, lo, hi);
    } else {
      found = subdivide_descartes(p, lo, hi);
    }
    // Square-free chain: multiplicity = 1 + number of chain members vanishing in the bracket.
    std::vector<Sturm> chain;
    if (st) {
      Dense g = gcd_dense(to_dense(p), derivative(to_dense(p)));
      while (g.size() > 1) {
        chain.emplace_back(g);
        g = gcd_dense(g, derivative(g));
      }
    }
    for (const auto& f : found) {
      IsolatingInterval iv{f.low, f.high, f.count};
      refine(p, st.get(), iv.low, iv.high, width, zero_inside, lo, hi);
      if (st) {
        iv.multiplicity = 1;
        for (const auto& c : chain) {
          if (c.count_open(iv.low, iv.high) == 0) break;
          ++iv.multiplicity;
        }
      }
      roots.push_back(iv);
    }
  }
  if (zero_inside) {
    Rational delta = width / 4;
    for (const auto& r : roots) {
      Rational gap = r.low > 0 ? r.low : -r.high;
      delta = std::min(delta, Rational(gap / 2));
    }
    delta = std::min({delta, Rational(-lo / 2), Rational(hi / 2)});
    roots.push_back({-delta, delta, static_cast<int>(k)});
  }
  std::sort(roots.begin(), roots.end(),
            [](const IsolatingInterval& x, const IsolatingInterval& y) { return x.low < y.low; });
  return roots;
}

NegativeRegion isolate_negative_region(const UPoly& p, const Rational& lo, const Rational& hi,
                                       const Rational& width, RootMethod method) {
  NegativeRegion region;
  region.roots = isolate_roots(p, lo, hi, width, method);
  const auto& roots = region.roots;
  // Segment i runs from end i to end i+1; ends are the domain edges and root brackets.
  std::vector<SpanEnd> ends;
  ends.push_back({lo, lo, false});
  for (const auto& r : roots) ends.push_back({r.low, r.high, true});
  ends.push_back({hi, hi, false});
  std::vector<int> seg_sign;
  for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
    Rational a = ends[i].high, b = ends[i + 1].low;
    Rational sample = (a + b) / 2;
    seg_sign.push_back(p.sign_at(sample));
  }
  for (std::size_t i = 0; i < seg_sign.size(); ++i) {
    if (seg_sign[i] >= 0) continue;
    if (!region.negative.empty() && i > 0 && seg_sign[i - 1] < 0) {
      region.negative.back().end = ends[i + 1];
    } else {
      region.negative.push_back({ends[i], ends[i + 1]});
    }
  }
  return region;
}

NegativeRegion isolate_negative_region(const MultiPoly& p, const Rational& lo, const Rational& hi,
                                       const Rational& width) {
  if (p.is_zero()) throw std::invalid_argument("cannot isolate roots of the zero polynomial");
  return isolate_negative_region(UPoly::from_multipoly(p), lo, hi, width);
}

}  // namespace bunkbed

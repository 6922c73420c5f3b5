#pragma once

#include <utility>
#include <vector>

#include "bunkbed/multipoly.hpp"
#include "bunkbed/upoly.hpp"

namespace bunkbed {

struct IsolatingInterval {
  Rational low;
  Rational high;
  int multiplicity = 1;
};

// One end of a negative span: either a bracketed root or an exact domain edge.
struct SpanEnd {
  Rational low;
  Rational high;
  bool is_root = false;
};

struct NegativeSpan {
  SpanEnd start;
  SpanEnd end;
};

struct NegativeRegion {
  std::vector<IsolatingInterval> roots;  // left to right, inside the open domain
  std::vector<NegativeSpan> negative;    // maximal spans where p < 0
};

// Number of distinct real roots in (a, b]; a, b need not be roots.
int sturm_count(const UPoly& p, const Rational& a, const Rational& b);
// Sign variations of (1+x)^d p((a+bx)/(1+x)): an upper bound on roots in (a,b), exact when 0 or 1.
int descartes_bound(const UPoly& p, const Rational& a, const Rational& b);

enum class RootMethod { automatic, sturm, descartes };

std::vector<IsolatingInterval> isolate_roots(const UPoly& p, const Rational& lo, const Rational& hi,
                                             const Rational& width, RootMethod method = RootMethod::automatic);
NegativeRegion isolate_negative_region(const UPoly& p, const Rational& lo, const Rational& hi,
                                       const Rational& width, RootMethod method = RootMethod::automatic);
NegativeRegion isolate_negative_region(const MultiPoly& p, const Rational& lo, const Rational& hi,
                                       const Rational& width);

}  // namespace bunkbed

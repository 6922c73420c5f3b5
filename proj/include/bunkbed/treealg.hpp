#pragma once

#include <optional>
#include <vector>

#include "bunkbed/graph.hpp"
#include "bunkbed/matrix.hpp"

namespace bunkbed {

// Unit weights unless `weighted`, in which case constant edge weights scale off-diagonals.
RationalMatrix laplacian(const Graph& g, bool weighted = false);

Integer all_minors_count(const Graph& g, const std::vector<int>& S, const std::vector<int>& T);

// Throws std::domain_error for a disconnected graph.
RationalMatrix pseudoinverse(const RationalMatrix& L);

class LaplacianBundle {
 public:
  explicit LaplacianBundle(const Graph& g, bool weighted = false);
  const RationalMatrix& L() const { return L_; }
  const RationalMatrix& pinv() const { return pinv_; }
  int order() const { return static_cast<int>(L_.rows()); }
  Rational resistance(int u, int v) const;
  Rational cross_inner(int a, int b, int c, int d) const;
  RationalMatrix resistance_matrix() const;

 private:
  RationalMatrix L_;
  RationalMatrix pinv_;
};

Rational resistance(const Graph& g, int u, int v);
Rational cross_inner(const Graph& g, int a, int b, int c, int d);
RationalMatrix resistance_matrix(const Graph& g);

struct PsdCertificate {
  bool psd = false;
  std::vector<Rational> witness;  // x with x^T M x < 0 when not PSD
};
PsdCertificate psd_certificate(const RationalMatrix& M);
Rational quadratic_form(const RationalMatrix& M, const std::vector<Rational>& x);

struct BunkbedPseudoinverse {
  RationalMatrix direct;         // from the bunkbed Laplacian; layer 1 then layer 2
  RationalMatrix block_formula;  // 1/2 [[P + K, P - K], [P - K, P + K]], P = L^+, K = (L + 2I)^-1
};
BunkbedPseudoinverse bunkbed_pseudoinverse(const Graph& g);

// (L^{SS})^{-1}(u, v) with S = V \ T.
Rational posts_entry(const Graph& g, const std::vector<int>& T, int u, int v);

}  // namespace bunkbed

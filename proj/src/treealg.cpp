#include "bunkbed/treealg.hpp"

#include <algorithm>
#include <stdexcept>

namespace bunkbed {

RationalMatrix laplacian(const Graph& g, bool weighted) {
  std::size_t n = static_cast<std::size_t>(g.vertex_count());
  RationalMatrix L(n, n);
  for (const auto& e : g.edges()) {
    Rational w = weighted ? e.weight.constant_value() : Rational(1);
    L(e.u, e.u) += w;
    L(e.v, e.v) += w;
    L(e.u, e.v) -= w;
    L(e.v, e.u) -= w;
  }
  return L;
}

Integer all_minors_count(const Graph& g, const std::vector<int>& S, const std::vector<int>& T) {
  if (S.size() != T.size()) throw std::invalid_argument("all-minors count needs |S| = |T|");
  int n = g.vertex_count();
  auto complement = [n](const std::vector<int>& X) {
    std::vector<std::size_t> keep;
    for (int v = 0; v < n; ++v) {
      if (std::find(X.begin(), X.end(), v) == X.end()) keep.push_back(static_cast<std::size_t>(v));
    }
    return keep;
  };
  for (int v : S) {
    if (v < 0 || v >= n) throw std::out_of_range("vertex out of range");
  }
  for (int v : T) {
    if (v < 0 || v >= n) throw std::out_of_range("vertex out of range");
  }
  RationalMatrix minor = laplacian(g).submatrix(complement(S), complement(T));
  Rational det = bareiss_det(minor);
  return abs(det.get_num());
}

RationalMatrix pseudoinverse(const RationalMatrix& L) {
  if (!L.is_square()) throw std::invalid_argument("pseudoinverse needs a square Laplacian");
  std::size_t n = L.rows();
  if (n == 0) return L;
  RationalMatrix J = RationalMatrix::ones(n, n).scaled(Rational(1, static_cast<long>(n)));
  RationalMatrix M;
  try {
    M = inverse(L + J);
  } catch (const std::domain_error&) {
    throw std::domain_error("graph is disconnected: L + J/n is singular");
  }
  return M - J;
}

LaplacianBundle::LaplacianBundle(const Graph& g, bool weighted) : L_(laplacian(g, weighted)), pinv_(pseudoinverse(L_)) {}

Rational LaplacianBundle::resistance(int u, int v) const { return pinv_(u, u) + pinv_(v, v) - 2 * pinv_(u, v); }

Rational LaplacianBundle::cross_inner(int a, int b, int c, int d) const {
  return pinv_(a, c) - pinv_(a, d) - pinv_(b, c) + pinv_(b, d);
}

RationalMatrix LaplacianBundle::resistance_matrix() const {
  std::size_t n = L_.rows();
  RationalMatrix R(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) R(i, j) = resistance(static_cast<int>(i), static_cast<int>(j));
  }
  return R;
}

Rational resistance(const Graph& g, int u, int v) { return LaplacianBundle(g).resistance(u, v); }

Rational cross_inner(const Graph& g, int a, int b, int c, int d) { return LaplacianBundle(g).cross_inner(a, b, c, d); }

RationalMatrix resistance_matrix(const Graph& g) { return LaplacianBundle(g).resistance_matrix(); }

Rational quadratic_form(const RationalMatrix& M, const std::vector<Rational>& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < M.cols(); ++j) s += x[i] * M(i, j) * x[j];
  }
  return s;
}

PsdCertificate psd_certificate(const RationalMatrix& M) {
  if (!M.is_symmetric()) throw std::invalid_argument("PSD certificate needs a symmetric matrix");
  std::size_t n = M.rows();
  PsdCertificate cert;
  // Small witnesses first: e_i, then e_i - s e_j.
  for (std::size_t i = 0; i < n; ++i) {
    if (M(i, i) < 0) {
      cert.witness.assign(n, 0);
      cert.witness[i] = 1;
      return cert;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      int s = sgn(M(i, j));
      if (s == 0) continue;
      if (M(i, i) + M(j, j) - 2 * abs(M(i, j)) < 0) {
        cert.witness.assign(n, 0);
        cert.witness[i] = 1;
        cert.witness[j] = -s;
        return cert;
      }
    }
  }
  // Symmetric elimination with diagonal pivoting. steps record how to lift a
  // witness of a Schur complement back to the full space.
  struct Step {
    std::size_t pivot;
    std::vector<std::pair<std::size_t, Rational>> coupling;  // (index, M(pivot, index) / M(pivot, pivot))
  };
  RationalMatrix A = M;
  std::vector<bool> active(n, true);
  std::vector<Step> steps;
  std::vector<Rational> y;
  bool found = false;
  for (std::size_t round = 0; round < n && !found; ++round) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      if (A(i, i) < 0) {
        y.assign(n, 0);
        y[i] = 1;
        found = true;
        break;
      }
      if (A(i, i) > 0 && piv == n) piv = i;
    }
    if (found) break;
    if (piv == n) {
      // All remaining diagonals are zero: any nonzero off-diagonal breaks PSD.
      for (std::size_t i = 0; i < n && !found; ++i) {
        for (std::size_t j = 0; j < n && !found; ++j) {
          if (i != j && active[i] && active[j] && A(i, j) != 0) {
            y.assign(n, 0);
            y[i] = 1;
            y[j] = -sgn(A(i, j));
            found = true;
          }
        }
      }
      break;
    }
    Step st{piv, {}};
    for (std::size_t j = 0; j < n; ++j) {
      if (active[j] && j != piv && A(piv, j) != 0) st.coupling.emplace_back(j, A(piv, j) / A(piv, piv));
    }
    for (const auto& [i, ci] : st.coupling) {
      for (const auto& [j, cj] : st.coupling) A(i, j) -= ci * A(piv, j);
    }
    active[piv] = false;
    steps.push_back(std::move(st));
  }
  if (!found) {
    cert.psd = true;
    return cert;
  }
  // x_pivot = -sum_j coupling_j x_j, applied from the last pivot backwards.
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    Rational s = 0;
    for (const auto& [j, c] : it->coupling) s += c * y[j];
    y[it->pivot] = -s;
  }
  cert.witness = y;
  return cert;
}

BunkbedPseudoinverse bunkbed_pseudoinverse(const Graph& g) {
  std::size_t n = static_cast<std::size_t>(g.vertex_count());
  Bunkbed b = bunkbed(g.with_unit_weights());
  RationalMatrix direct_raw = pseudoinverse(laplacian(b.graph));
  BunkbedPseudoinverse out;
  out.direct = RationalMatrix(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.direct(i, j) = direct_raw(b.lower[i], b.lower[j]);
      out.direct(i, n + j) = direct_raw(b.lower[i], b.upper[j]);
      out.direct(n + i, j) = direct_raw(b.upper[i], b.lower[j]);
      out.direct(n + i, n + j) = direct_raw(b.upper[i], b.upper[j]);
    }
  }
  RationalMatrix L = laplacian(g);
  RationalMatrix P = pseudoinverse(L);
  RationalMatrix K = inverse(L + RationalMatrix::identity(n).scaled(2));
  out.block_formula = RationalMatrix(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational diag = (P(i, j) + K(i, j)) / 2, off = (P(i, j) - K(i, j)) / 2;
      out.block_formula(i, j) = diag;
      out.block_formula(n + i, n + j) = diag;
      out.block_formula(i, n + j) = off;
      out.block_formula(n + i, j) = off;
    }
  }
  return out;
}

Rational posts_entry(const Graph& g, const std::vector<int>& T, int u, int v) {
  if (T.empty()) throw std::domain_error("posts_entry needs a nonempty post set (L^{SS} is singular otherwise)");
  int n = g.vertex_count();
  std::vector<std::size_t> S;
  for (int w = 0; w < n; ++w) {
    if (std::find(T.begin(), T.end(), w) == T.end()) S.push_back(static_cast<std::size_t>(w));
  }
  auto pos = [&](int w) {
    auto it = std::find(S.begin(), S.end(), static_cast<std::size_t>(w));
    if (it == S.end()) throw std::invalid_argument("vertex " + std::to_string(w) + " is a post");
    return static_cast<std::size_t>(it - S.begin());
  };
  std::size_t iu = pos(u), iv = pos(v);
  RationalMatrix LSS = laplacian(g).submatrix(S, S);
  return inverse(LSS)(iu, iv);
}

}  // namespace bunkbed

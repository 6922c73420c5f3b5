#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "bunkbed/rational.hpp"

namespace bunkbed {

enum class Var : std::uint8_t { q = 0, l = 1, g = 2, h = 3 };
inline constexpr std::size_t kVarCount = 4;
char var_name(Var v);

using Exponents = std::array<std::uint32_t, kVarCount>;
using Assignment = std::map<Var, Rational>;

// Sparse polynomial over Q in q, l (lambda), g, h.
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(const Rational& c);  // NOLINT(implicit)
  MultiPoly(long c);             // NOLINT(implicit)

  static MultiPoly variable(Var v, unsigned power = 1);
  static MultiPoly monomial(const Rational& c, const Exponents& e);
  static MultiPoly parse(std::string_view text);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // throws unless constant
  bool uses(Var v) const;

  const std::map<Exponents, Rational>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  unsigned degree(Var v) const;
  unsigned min_degree(Var v) const;
  // Coefficient of v^power, as a polynomial in the other variables.
  MultiPoly coefficient(Var v, unsigned power) const;
  MultiPoly substitute(Var v, const Rational& value) const;
  MultiPoly pow(unsigned k) const;
  bool all_coefficients_nonnegative() const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  std::map<Exponents, Rational> terms_;
};

Rational poly_eval(const MultiPoly& p, const Assignment& point);

}  // namespace bunkbed

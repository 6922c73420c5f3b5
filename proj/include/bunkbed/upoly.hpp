#pragma once

#include <string>
#include <vector>

#include "bunkbed/multipoly.hpp"

namespace bunkbed {

// Dense polynomial in q: coefficient i is num[i] / den. The denominator is
// shared and not reduced eagerly; glue tables multiply thousands of these.
class UPoly {
 public:
  UPoly() = default;
  static UPoly constant(const Rational& c);
  static UPoly monomial(const Rational& c, std::size_t power);
  static UPoly from_coefficients(const std::vector<Rational>& coeffs);
  static UPoly from_integers(std::vector<Integer> nums, Integer den = 1);
  static UPoly from_multipoly(const MultiPoly& p);  // throws if p uses l, g or h

  bool is_zero() const { return num_.empty(); }
  int degree() const { return static_cast<int>(num_.size()) - 1; }
  std::size_t low_degree() const;
  Rational coefficient(std::size_t i) const;
  const std::vector<Integer>& numerators() const { return num_; }
  const Integer& denominator() const { return den_; }

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly scaled(const Rational& c) const;
  UPoly shifted(std::size_t k) const;  // times q^k
  UPoly derivative() const;
  UPoly normalized() const;
  friend bool operator==(const UPoly& a, const UPoly& b);

  Rational evaluate(const Rational& x) const;
  int sign_at(const Rational& x) const;
  bool all_coefficients_nonnegative() const;

  MultiPoly to_multipoly() const;
  std::string to_string() const { return to_multipoly().to_string(); }

 private:
  void trim();
  std::vector<Integer> num_;
  Integer den_ = 1;
};

// Exposed for tests: both must agree on every input.
std::vector<Integer> multiply_schoolbook(const std::vector<Integer>& a, const std::vector<Integer>& b);
std::vector<Integer> multiply_kronecker(const std::vector<Integer>& a, const std::vector<Integer>& b);

}  // namespace bunkbed

#include <doctest.h>

#include <random>

#include "bunkbed/errors.hpp"
#include "bunkbed/matrix.hpp"
#include "bunkbed/multipoly.hpp"
#include "bunkbed/rational.hpp"
#include "bunkbed/roots.hpp"
#include "bunkbed/upoly.hpp"

using namespace bunkbed;

namespace {

Rational random_rational(std::mt19937_64& rng, int span = 9) {
  long num = static_cast<long>(rng() % (2 * span + 1)) - span;
  long den = static_cast<long>(rng() % span) + 1;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

MultiPoly random_poly(std::mt19937_64& rng) {
  MultiPoly p;
  int terms = static_cast<int>(rng() % 4) + 1;
  for (int i = 0; i < terms; ++i) {
    Exponents e{};
    for (auto& x : e) x = static_cast<std::uint32_t>(rng() % 3);
    p += MultiPoly::monomial(random_rational(rng), e);
  }
  return p;
}

Rational cofactor_det(const RationalMatrix& m) {
  std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Rational total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) cols.push_back(k);
    }
    Rational minor = cofactor_det(m.submatrix(rows, cols));
    total += (j % 2 ? -1 : 1) * m(0, j) * minor;
  }
  return total;
}

}  // namespace

TEST_CASE("rational parsing is exact and canonical") {
  CHECK(parse_rational("1/100") == Rational(1, 100));
  CHECK(parse_rational(" -6/8 ") == Rational(-3, 4));
  CHECK(to_string(parse_rational("4/2")) == "2");
  CHECK_THROWS(parse_rational("0.5"));
  CHECK_THROWS(parse_rational("1/0"));
  Rational r = parse_rational("10/4");
  CHECK(r.get_den() == 2);
  CHECK(r.get_num() == 5);
}

TEST_CASE("decimal truncation floors") {
  CHECK(truncate_decimal(Rational(7, 10), 2) == "0.70");
  CHECK(truncate_decimal(Rational(1429, 1000), 2) == "1.42");
  CHECK(truncate_decimal(Rational(-1, 3), 2) == "-0.34");
  CHECK(floor_to(Rational(5689, 10000), 2) == Rational(14, 25));
}

TEST_CASE("poly_eval examples") {
  MultiPoly cubic = MultiPoly::parse("q^3 - 5*q^2 + 10*q - 7");
  CHECK(poly_eval(cubic, {{Var::q, 1}}) == -1);
  CHECK(poly_eval(cubic, {{Var::q, 2}}) == 1);
  MultiPoly forests = MultiPoly::parse("3*l^2 + 3*l + 1");
  CHECK(poly_eval(forests, {{Var::l, 1}}) == 7);
  CHECK_THROWS_WITH_AS(poly_eval(cubic, {{Var::l, 1}}), doctest::Contains("q"), std::invalid_argument);
}

TEST_CASE("multipoly text round trip and no zero terms") {
  MultiPoly p = MultiPoly::parse("2*q^2*l - 1/3*g*h + 5");
  CHECK(MultiPoly::parse(p.to_string()) == p);
  MultiPoly z = p - p;
  CHECK(z.is_zero());
  CHECK(z.term_count() == 0);
  MultiPoly sq = p * p;
  for (const auto& [e, c] : sq.terms()) CHECK(c != 0);
}

TEST_CASE("multipoly ring laws on random triples") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    MultiPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    Assignment pt{{Var::q, random_rational(rng)}, {Var::l, random_rational(rng)},
                  {Var::g, random_rational(rng)}, {Var::h, random_rational(rng)}};
    CHECK(poly_eval(a * b + c, pt) == poly_eval(a, pt) * poly_eval(b, pt) + poly_eval(c, pt));
  }
}

TEST_CASE("upoly agrees with multipoly") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> ca, cb;
    for (int i = 0; i < 6; ++i) ca.push_back(random_rational(rng));
    for (int i = 0; i < 4; ++i) cb.push_back(random_rational(rng));
    UPoly a = UPoly::from_coefficients(ca), b = UPoly::from_coefficients(cb);
    CHECK((a * b).to_multipoly() == a.to_multipoly() * b.to_multipoly());
    CHECK((a + b).to_multipoly() == a.to_multipoly() + b.to_multipoly());
    Rational x = random_rational(rng);
    CHECK(a.evaluate(x) == poly_eval(a.to_multipoly(), {{Var::q, x}}));
  }
}

TEST_CASE("kronecker and schoolbook products agree") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Integer> a(20 + rng() % 40), b(20 + rng() % 40);
    for (auto& x : a) x = Integer(static_cast<long>(rng() % 2000001)) - 1000000;
    for (auto& x : b) x = Integer(static_cast<long>(rng() % 2000001)) - 1000000;
    CHECK(multiply_kronecker(a, b) == multiply_schoolbook(a, b));
  }
}

TEST_CASE("bareiss determinant examples") {
  CHECK(bareiss_det(RationalMatrix::from_rows({{2, -1}, {-1, 2}})) == 3);
  CHECK(bareiss_det(RationalMatrix::identity(3)) == 1);
  RationalMatrix k4 = RationalMatrix::from_rows({{3, -1, -1}, {-1, 3, -1}, {-1, -1, 3}});
  CHECK(bareiss_det(k4) == 16);
  CHECK_THROWS(bareiss_det(RationalMatrix(2, 3)));
}

TEST_CASE("bareiss equals cofactor expansion on random 4x4") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    RationalMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = trial % 3 == 0 ? Rational(static_cast<long>(rng() % 3) - 1) : random_rational(rng);
    }
    CHECK(bareiss_det(m) == cofactor_det(m));
  }
}

TEST_CASE("inverse times matrix is identity") {
  std::mt19937_64 rng(9);
  int done = 0;
  while (done < 30) {
    RationalMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = random_rational(rng);
    }
    if (bareiss_det(m) == 0) continue;
    CHECK(inverse(m) * m == RationalMatrix::identity(4));
    ++done;
  }
}

TEST_CASE("root isolation of the cubic") {
  UPoly cubic = UPoly::from_multipoly(MultiPoly::parse("q^3 - 5*q^2 + 10*q - 7"));
  auto roots = isolate_roots(cubic, 0, 10, Rational(1, 1000));
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].low >= Rational(71, 50));
  CHECK(roots[0].high <= Rational(36, 25));
  CHECK(roots[0].high - roots[0].low <= Rational(1, 1000));
  CHECK(cubic.sign_at(roots[0].low) < 0);
  CHECK(cubic.sign_at(roots[0].high) > 0);
  CHECK(sturm_count(cubic, roots[0].low, roots[0].high) == 1);
}

TEST_CASE("negative region of q - 1") {
  NegativeRegion r = isolate_negative_region(MultiPoly::parse("q - 1"), 0, 2, Rational(1, 100));
  REQUIRE(r.negative.size() == 1);
  CHECK(r.negative[0].start.low == 0);
  CHECK_FALSE(r.negative[0].start.is_root);
  CHECK(r.negative[0].end.is_root);
  CHECK(r.negative[0].end.low >= Rational(99, 100));
  CHECK(r.negative[0].end.high <= Rational(101, 100));
  CHECK_THROWS(isolate_negative_region(MultiPoly(), 0, 2, Rational(1, 100)));
  CHECK(isolate_negative_region(MultiPoly::parse("q^2 + 1"), 0, 2, Rational(1, 100)).negative.empty());
  NegativeRegion full = isolate_negative_region(MultiPoly::parse("-q - 1"), 0, 2, Rational(1, 100));
  REQUIRE(full.negative.size() == 1);
  CHECK(full.negative[0].end.high == 2);
}

TEST_CASE("isolating intervals on random products of linear factors") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    UPoly p = UPoly::constant(1);
    std::vector<Rational> roots;
    int k = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < k; ++i) {
      Rational r(static_cast<long>(rng() % 97) + 1, static_cast<long>(rng() % 13) + 1);
      r.canonicalize();
      if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
      roots.push_back(r);
      p = p * UPoly::from_coefficients({-r, 1});
    }
    auto iv = isolate_roots(p, 0, 100, Rational(1, 1000), trial % 2 ? RootMethod::sturm : RootMethod::descartes);
    CHECK(iv.size() == roots.size());
    for (const auto& x : iv) {
      CHECK(x.low < x.high);
      int inside = 0;
      for (const auto& r : roots) inside += (r > x.low && r < x.high) || r == x.low || r == x.high;
      CHECK(inside == x.multiplicity);
      if (p.sign_at(x.low) != 0 && p.sign_at(x.high) != 0) {
        CHECK(p.sign_at(x.low) * p.sign_at(x.high) < 0);
        CHECK(sturm_count(p, x.low, x.high) == x.multiplicity);
      }
    }
  }
}

TEST_CASE("guard overrides parse") {
  Guards g = parse_guard_overrides("subset_edges=30,bell=13", Guards{});
  CHECK(g.subset_edges == 30);
  CHECK(g.partition_size == 13);
  CHECK_THROWS(parse_guard_overrides("bogus=1", Guards{}));
  CHECK_THROWS(parse_guard_overrides("bell=99", Guards{}));
}

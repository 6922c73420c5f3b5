#include "bunkbed/upoly.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace bunkbed {
namespace {

static_assert(GMP_NAIL_BITS == 0, "limb packing assumes no nail bits");

std::size_t max_bits(const std::vector<Integer>& v) {
  std::size_t b = 0;
  for (const auto& x : v) {
    if (x != 0) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
  }
  return b;
}

bool any_negative(const std::vector<Integer>& v) {
  return std::any_of(v.begin(), v.end(), [](const Integer& x) { return x < 0; });
}

// Packs non-negative coefficients into one integer, `limbs` limbs per slot.
void pack(mpz_t out, const std::vector<Integer>& v, std::size_t limbs) {
  std::size_t total = v.size() * limbs;
  mp_limb_t* dst = mpz_limbs_write(out, static_cast<mp_size_t>(total));
  std::memset(dst, 0, total * sizeof(mp_limb_t));
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t n = mpz_size(v[i].get_mpz_t());
    if (n > 0) std::memcpy(dst + i * limbs, mpz_limbs_read(v[i].get_mpz_t()), n * sizeof(mp_limb_t));
  }
  mpz_limbs_finish(out, static_cast<mp_size_t>(total));
}

std::vector<Integer> kronecker_nonnegative(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::size_t len = std::min(a.size(), b.size());
  std::size_t bits = max_bits(a) + max_bits(b) + mpz_sizeinbase(Integer(static_cast<unsigned long>(len)).get_mpz_t(), 2) + 1;
  std::size_t limbs = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
  mpz_t A, B, C;
  mpz_init(A);
  mpz_init(B);
  mpz_init(C);
  pack(A, a, limbs);
  pack(B, b, limbs);
  mpz_mul(C, A, B);
  std::vector<Integer> out(a.size() + b.size() - 1);
  const mp_limb_t* src = mpz_limbs_read(C);
  std::size_t have = mpz_size(C);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::size_t off = i * limbs;
    if (off >= have) break;
    std::size_t n = std::min(limbs, have - off);
    mpz_ptr z = out[i].get_mpz_t();
    mp_limb_t* dst = mpz_limbs_write(z, static_cast<mp_size_t>(n));
    std::memcpy(dst, src + off, n * sizeof(mp_limb_t));
    mpz_limbs_finish(z, static_cast<mp_size_t>(n));
  }
  mpz_clear(A);
  mpz_clear(B);
  mpz_clear(C);
  return out;
}

void split_signs(const std::vector<Integer>& v, std::vector<Integer>& pos, std::vector<Integer>& neg) {
  pos.assign(v.size(), 0);
  neg.assign(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > 0) pos[i] = v[i];
    else if (v[i] < 0) neg[i] = -v[i];
  }
}

void add_into(std::vector<Integer>& acc, const std::vector<Integer>& x, int s) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (s > 0) acc[i] += x[i];
    else acc[i] -= x[i];
  }
}

}  // namespace

std::vector<Integer> multiply_schoolbook(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Integer> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return out;
}

std::vector<Integer> multiply_kronecker(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  if (a.empty() || b.empty()) return {};
  if (!any_negative(a) && !any_negative(b)) return kronecker_nonnegative(a, b);
  std::vector<Integer> ap, an, bp, bn;
  split_signs(a, ap, an);
  split_signs(b, bp, bn);
  std::vector<Integer> out = kronecker_nonnegative(ap, bp);
  add_into(out, kronecker_nonnegative(an, bn), 1);
  add_into(out, kronecker_nonnegative(ap, bn), -1);
  add_into(out, kronecker_nonnegative(an, bp), -1);
  return out;
}

UPoly UPoly::constant(const Rational& c) { return monomial(c, 0); }

UPoly UPoly::monomial(const Rational& c, std::size_t power) {
  UPoly p;
  if (c == 0) return p;
  p.num_.assign(power + 1, 0);
  p.num_[power] = c.get_num();
  p.den_ = c.get_den();
  return p;
}

UPoly UPoly::from_coefficients(const std::vector<Rational>& coeffs) {
  Integer den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  UPoly p;
  p.den_ = den;
  p.num_.reserve(coeffs.size());
  for (const auto& c : coeffs) p.num_.push_back(c.get_num() * (den / c.get_den()));
  p.trim();
  return p;
}

UPoly UPoly::from_integers(std::vector<Integer> nums, Integer den) {
  if (den <= 0) throw std::invalid_argument("UPoly denominator must be positive");
  UPoly p;
  p.num_ = std::move(nums);
  p.den_ = std::move(den);
  p.trim();
  return p;
}

UPoly UPoly::from_multipoly(const MultiPoly& m) {
  if (m.uses(Var::l) || m.uses(Var::g) || m.uses(Var::h)) {
    throw std::invalid_argument("polynomial is not univariate in q: " + m.to_string());
  }
  std::vector<Rational> coeffs(m.degree(Var::q) + 1);
  for (const auto& [e, c] : m.terms()) coeffs[e[0]] = c;
  return from_coefficients(coeffs);
}

void UPoly::trim() {
  while (!num_.empty() && num_.back() == 0) num_.pop_back();
  if (num_.empty()) den_ = 1;
}

std::size_t UPoly::low_degree() const {
  std::size_t i = 0;
  while (i < num_.size() && num_[i] == 0) ++i;
  return i;
}

Rational UPoly::coefficient(std::size_t i) const {
  if (i >= num_.size()) return 0;
  Rational r(num_[i], den_);
  r.canonicalize();
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    if (num_.size() < o.num_.size()) num_.resize(o.num_.size());
    for (std::size_t i = 0; i < o.num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    Integer g = gcd(den_, o.den_);
    Integer mine = o.den_ / g, theirs = den_ / g;
    if (num_.size() < o.num_.size()) num_.resize(o.num_.size());
    for (auto& x : num_) x *= mine;
    for (std::size_t i = 0; i < o.num_.size(); ++i) mpz_addmul(num_[i].get_mpz_t(), o.num_[i].get_mpz_t(), theirs.get_mpz_t());
    den_ *= mine;
  }
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) { return *this += o.scaled(-1); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  UPoly out;
  bool big = std::min(a.num_.size(), b.num_.size()) >= 12;
  out.num_ = big ? multiply_kronecker(a.num_, b.num_) : multiply_schoolbook(a.num_, b.num_);
  out.den_ = a.den_ * b.den_;
  out.trim();
  return out;
}

UPoly UPoly::scaled(const Rational& c) const {
  if (c == 0 || is_zero()) return {};
  UPoly out = *this;
  if (c.get_num() != 1) {
    for (auto& x : out.num_) x *= c.get_num();
  }
  out.den_ *= c.get_den();
  if (out.den_ < 0) {
    out.den_ = -out.den_;
    for (auto& x : out.num_) x = -x;
  }
  return out;
}

UPoly UPoly::shifted(std::size_t k) const {
  if (is_zero() || k == 0) return *this;
  UPoly out;
  out.den_ = den_;
  out.num_.assign(k, 0);
  out.num_.insert(out.num_.end(), num_.begin(), num_.end());
  return out;
}

UPoly UPoly::derivative() const {
  UPoly out;
  out.den_ = den_;
  for (std::size_t i = 1; i < num_.size(); ++i) out.num_.push_back(num_[i] * static_cast<unsigned long>(i));
  out.trim();
  return out;
}

UPoly UPoly::normalized() const {
  UPoly out = *this;
  Integer g = den_;
  for (const auto& x : num_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  if (g != 1 && g != 0) {
    for (auto& x : out.num_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(out.den_.get_mpz_t(), out.den_.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

bool operator==(const UPoly& a, const UPoly& b) {
  if (a.num_.size() != b.num_.size()) return false;
  for (std::size_t i = 0; i < a.num_.size(); ++i) {
    if (a.num_[i] * b.den_ != b.num_[i] * a.den_) return false;
  }
  return true;
}

namespace {

// Sum num[i] s^i t^(d-i) for x = s/t with t > 0.
Integer homogeneous_value(const std::vector<Integer>& num, const Rational& x) {
  const Integer& s = x.get_num();
  const Integer& t = x.get_den();
  Integer acc = num.back();
  Integer tpow = 1;
  for (std::size_t k = num.size() - 1; k-- > 0;) {
    tpow *= t;
    acc *= s;
    mpz_addmul(acc.get_mpz_t(), num[k].get_mpz_t(), tpow.get_mpz_t());
  }
  return acc;
}

}  // namespace

Rational UPoly::evaluate(const Rational& x) const {
  if (is_zero()) return 0;
  Integer v = homogeneous_value(num_, x);
  Rational r(v, den_ * pow(x.get_den(), static_cast<unsigned>(num_.size() - 1)));
  r.canonicalize();
  return r;
}

int UPoly::sign_at(const Rational& x) const {
  if (is_zero()) return 0;
  return sgn(homogeneous_value(num_, x));
}

bool UPoly::all_coefficients_nonnegative() const {
  return !any_negative(num_);
}

MultiPoly UPoly::to_multipoly() const {
  MultiPoly out;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    Exponents e{};
    e[0] = static_cast<std::uint32_t>(i);
    out += MultiPoly::monomial(coefficient(i), e);
  }
  return out;
}

}  // namespace bunkbed

#include "bunkbed/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace bunkbed {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("not an exact rational: '" + std::string(text) + "' (use forms like 3 or 1/100)");
  }
  Integer n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

int sign(const Rational& r) { return sgn(r); }
int sign(const Integer& z) { return sgn(z); }

Rational floor_to(const Rational& r, int digits) {
  Integer scale = pow(Integer(10), static_cast<unsigned>(digits));
  Integer scaled_num = r.get_num() * scale;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled_num.get_mpz_t(), r.get_den().get_mpz_t());
  Rational out(fl, scale);
  out.canonicalize();
  return out;
}

std::string truncate_decimal(const Rational& r, int digits) {
  Integer scale = pow(Integer(10), static_cast<unsigned>(digits));
  Integer scaled_num = r.get_num() * scale;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled_num.get_mpz_t(), r.get_den().get_mpz_t());
  bool negative = fl < 0;
  Integer mag = negative ? Integer(-fl) : fl;
  std::string s = mag.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

Rational pow(const Rational& base, unsigned exponent) {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(n, d);
  return r;  // already canonical: powers of coprime numbers stay coprime
}

Integer pow(const Integer& base, unsigned exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

}  // namespace bunkbed

#include "bunkbed/multipoly.hpp"

#include <cctype>
#include <stdexcept>

namespace bunkbed {

char var_name(Var v) {
  static constexpr char names[kVarCount] = {'q', 'l', 'g', 'h'};
  return names[static_cast<std::size_t>(v)];
}

MultiPoly::MultiPoly(const Rational& c) {
  if (c != 0) add_term(Exponents{}, c);
}

MultiPoly::MultiPoly(long c) : MultiPoly(Rational(c)) {}

MultiPoly MultiPoly::variable(Var v, unsigned power) {
  Exponents e{};
  e[static_cast<std::size_t>(v)] = power;
  return monomial(1, e);
}

MultiPoly MultiPoly::monomial(const Rational& c, const Exponents& e) {
  MultiPoly p;
  p.add_term(e, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{});
}

Rational MultiPoly::constant_value() const {
  if (!is_constant()) throw std::domain_error("polynomial is not constant: " + to_string());
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

bool MultiPoly::uses(Var v) const {
  auto i = static_cast<std::size_t>(v);
  for (const auto& [e, c] : terms_) {
    if (e[i] > 0) return true;
  }
  return false;
}

unsigned MultiPoly::degree(Var v) const {
  auto i = static_cast<std::size_t>(v);
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

unsigned MultiPoly::min_degree(Var v) const {
  if (terms_.empty()) return 0;
  auto i = static_cast<std::size_t>(v);
  unsigned d = UINT32_MAX;
  for (const auto& [e, c] : terms_) d = std::min(d, e[i]);
  return d;
}

MultiPoly MultiPoly::coefficient(Var v, unsigned power) const {
  auto i = static_cast<std::size_t>(v);
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    if (e[i] != power) continue;
    Exponents rest = e;
    rest[i] = 0;
    out.add_term(rest, c);
  }
  return out;
}

MultiPoly MultiPoly::substitute(Var v, const Rational& value) const {
  auto i = static_cast<std::size_t>(v);
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    rest[i] = 0;
    out.add_term(rest, c * bunkbed::pow(value, e[i]));
  }
  return out;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result(1), base = *this;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return result;
}

bool MultiPoly::all_coefficients_nonnegative() const {
  for (const auto& [e, c] : terms_) {
    if (c < 0) return false;
  }
  return true;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  // callers may hand in unreduced fractions
  if (inserted) it->second.canonicalize();
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e;
      for (std::size_t i = 0; i < kVarCount; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool has_var = false;
    std::string vars;
    for (std::size_t i = 0; i < kVarCount; ++i) {
      if (e[i] == 0) continue;
      if (has_var) vars += '*';
      has_var = true;
      vars += var_name(static_cast<Var>(i));
      if (e[i] > 1) vars += "^" + std::to_string(e[i]);
    }
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (!has_var) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += vars;
    } else {
      out += mag.get_str() + "*" + vars;
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  MultiPoly parse_all() {
    MultiPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse polynomial '" + std::string(s_) + "': " + what + " at offset " +
                                std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Integer digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }
  unsigned exponent() {
    Integer e = digits();
    if (!e.fits_uint_p()) fail("exponent too large");
    return static_cast<unsigned>(e.get_ui());
  }

  MultiPoly expr() {
    MultiPoly total;
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    MultiPoly t = term();
    total += negative ? -t : t;
    while (true) {
      if (accept('+')) total += term();
      else if (accept('-')) total -= term();
      else break;
    }
    return total;
  }

  MultiPoly term() {
    MultiPoly t = factor();
    while (accept('*')) t *= factor();
    return t;
  }

  MultiPoly factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    MultiPoly base;
    if (c == '(') {
      ++pos_;
      base = expr();
      if (!accept(')')) fail("missing ')'");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer n = digits();
      Integer d = 1;
      if (accept('/')) {
        d = digits();
        if (d == 0) fail("zero denominator");
      }
      Rational r(n, d);
      r.canonicalize();
      base = MultiPoly(r);
    } else {
      ++pos_;
      switch (c) {
        case 'q': base = MultiPoly::variable(Var::q); break;
        case 'l': base = MultiPoly::variable(Var::l); break;
        case 'g': base = MultiPoly::variable(Var::g); break;
        case 'h': base = MultiPoly::variable(Var::h); break;
        default: --pos_; fail(std::string("unknown indeterminate '") + c + "'");
      }
    }
    if (accept('^')) base = base.pow(exponent());
    return base;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly MultiPoly::parse(std::string_view text) { return Parser(text).parse_all(); }

Rational poly_eval(const MultiPoly& p, const Assignment& point) {
  Rational total = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < kVarCount; ++i) {
      if (e[i] == 0) continue;
      auto it = point.find(static_cast<Var>(i));
      if (it == point.end()) {
        throw std::invalid_argument(std::string("missing assignment for indeterminate '") +
                                    var_name(static_cast<Var>(i)) + "'");
      }
      term *= pow(it->second, e[i]);
    }
    total += term;
  }
  return total;
}

}  // namespace bunkbed

#include "divlink/laurent.h"

#include "divlink/error.h"

namespace divlink {

LaurentPolynomial::LaurentPolynomial(Variable var, const Integer& constant) : var_(var) {
  add_term(0, constant);
}

LaurentPolynomial LaurentPolynomial::monomial(Variable var, int exponent, const Integer& coefficient) {
  LaurentPolynomial p(var);
  p.add_term(exponent, coefficient);
  return p;
}

LaurentPolynomial LaurentPolynomial::from_terms(Variable var, const std::map<int, Integer>& terms) {
  LaurentPolynomial p(var);
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

void LaurentPolynomial::add_term(int exponent, const Integer& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
  if (inserted) return;
  it->second += coefficient;
  if (it->second == 0) terms_.erase(it);
}

void LaurentPolynomial::check_same(const LaurentPolynomial& other) const {
  // The zero polynomial adapts to the other operand's variable.
  if (var_ != other.var_ && !is_zero() && !other.is_zero())
    throw Error(ErrorCode::Internal, "mixing polynomials in different variables");
}

Integer LaurentPolynomial::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Integer(0) : it->second;
}

int LaurentPolynomial::min_exponent() const {
  if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no exponents");
  return terms_.begin()->first;
}

int LaurentPolynomial::max_exponent() const {
  if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no exponents");
  return terms_.rbegin()->first;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& other) {
  check_same(other);
  if (is_zero()) var_ = other.var_;
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& other) {
  check_same(other);
  if (is_zero()) var_ = other.var_;
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& other) {
  check_same(other);
  LaurentPolynomial out(is_zero() ? other.var_ : var_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : other.terms_) out.add_term(e1 + e2, c1 * c2);
  *this = std::move(out);
  return *this;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial out(var_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

LaurentPolynomial LaurentPolynomial::shifted(int k) const {
  LaurentPolynomial out(var_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e + k, c);
  return out;
}

LaurentPolynomial LaurentPolynomial::inverted() const {
  LaurentPolynomial out(var_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
  return out;
}

LaurentPolynomial LaurentPolynomial::pow(unsigned n) const {
  LaurentPolynomial out(var_, 1);
  for (unsigned i = 0; i < n; ++i) out *= *this;
  return out;
}

LaurentPolynomial LaurentPolynomial::divided_by(const LaurentPolynomial& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::Internal, "division by the zero polynomial");
  check_same(divisor);
  LaurentPolynomial rem = *this;
  LaurentPolynomial quot(is_zero() ? divisor.var_ : var_);
  const int dmax = divisor.max_exponent();
  const Integer& dlead = divisor.terms_.rbegin()->second;
  while (!rem.is_zero()) {
    const int rmax = rem.max_exponent();
    const Integer& rlead = rem.terms_.rbegin()->second;
    if (rmax - dmax < rem.min_exponent() - divisor.min_exponent() || rlead % dlead != 0)
      throw Error(ErrorCode::Internal, "inexact polynomial division");
    LaurentPolynomial term = monomial(quot.var_, rmax - dmax, rlead / dlead);
    quot += term;
    rem -= term * divisor;
  }
  return quot;
}

Rational LaurentPolynomial::evaluate(const Rational& x) const {
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational power = 1;
    if (e != 0 && x == 0) throw Error(ErrorCode::Internal, "evaluating a negative power at zero");
    const Rational base = e >= 0 ? x : Rational(1 / x);
    for (int i = 0; i < (e >= 0 ? e : -e); ++i) power *= base;
    sum += Rational(c) * power;
  }
  return sum;
}

std::string LaurentPolynomial::to_string() const {
  if (is_zero()) return "0";
  const char* name = var_ == Variable::Z ? "z" : var_ == Variable::A ? "A" : "t";
  auto exponent_text = [&](int e) -> std::string {
    if (var_ != Variable::SqrtT) return std::to_string(e);
    if (e % 2 == 0) return std::to_string(e / 2);
    return "(" + std::to_string(e) + "/2)";
  };
  const int unit = var_ == Variable::SqrtT ? 2 : 1;
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const int e = it->first;
    Integer c = it->second;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    const bool constant = e == 0;
    if (constant || c != 1) out += c.get_str();
    if (!constant) {
      out += name;
      if (e != unit) out += "^" + exponent_text(e);
    }
  }
  return out;
}

}  // namespace divlink

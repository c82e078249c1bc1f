#pragma once

#include "divlink/rational.h"

#include <map>
#include <string>

namespace divlink {

/// Which indeterminate a polynomial is written in. SqrtT stores powers of
/// t^(1/2) by their doubled exponent.
enum class Variable { T, Z, A, SqrtT };

/// Finite sum of integer multiples of integer powers of one variable.
/// Zero coefficients are never stored.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  explicit LaurentPolynomial(Variable var) : var_(var) {}
  LaurentPolynomial(Variable var, const Integer& constant);
  static LaurentPolynomial monomial(Variable var, int exponent, const Integer& coefficient = 1);
  /// From {exponent: coefficient} pairs; zero coefficients are dropped.
  static LaurentPolynomial from_terms(Variable var, const std::map<int, Integer>& terms);

  Variable variable() const { return var_; }
  const std::map<int, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(int exponent) const;
  int min_exponent() const;  // requires nonzero
  int max_exponent() const;  // requires nonzero

  LaurentPolynomial& operator+=(const LaurentPolynomial& other);
  LaurentPolynomial& operator-=(const LaurentPolynomial& other);
  LaurentPolynomial& operator*=(const LaurentPolynomial& other);
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(LaurentPolynomial a, const LaurentPolynomial& b) { return a *= b; }
  LaurentPolynomial operator-() const;

  /// Multiplies by x^k.
  LaurentPolynomial shifted(int k) const;
  /// Replaces x by x^-1.
  LaurentPolynomial inverted() const;
  LaurentPolynomial pow(unsigned n) const;
  /// Exact quotient; throws Internal if `divisor` does not divide.
  LaurentPolynomial divided_by(const LaurentPolynomial& divisor) const;
  Rational evaluate(const Rational& x) const;

  std::string to_string() const;

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.var_ == b.var_ && a.terms_ == b.terms_;
  }

 private:
  void add_term(int exponent, const Integer& coefficient);
  void check_same(const LaurentPolynomial& other) const;

  Variable var_ = Variable::T;
  std::map<int, Integer> terms_;
};

}  // namespace divlink

#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace divlink {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", an integer, or a plain decimal ("-0.125") into an exact rational.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text: "p/q" in lowest terms, or just "p" when the denominator is 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Nearest rational with the given power-of-two denominator.
Rational round_to_grid(double value, unsigned log2_denominator);

struct Point2 {
  Rational x;
  Rational y;

  Point2() = default;
  Point2(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {
    x.canonicalize();
    y.canonicalize();
  }

  friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point2& a, const Point2& b) { return !(a == b); }
  friend bool operator<(const Point2& a, const Point2& b) {
    int c = cmp(a.x, b.x);
    return c < 0 || (c == 0 && a.y < b.y);
  }

  Rational norm2() const { return x * x + y * y; }
};

inline Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(const Rational& k, const Point2& p) { return {k * p.x, k * p.y}; }

inline Rational cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }

std::string to_string(const Point2& p);

}  // namespace divlink

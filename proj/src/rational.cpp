#include "divlink/rational.h"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace divlink {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("malformed fraction");
    Integer n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator");
    value = Rational(n, d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view ip = body.substr(0, dot);
    std::string_view fp = body.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || !all_digits(fp) || (ip.empty() && fp.empty()))
      throw std::invalid_argument("malformed decimal");
    Integer n(std::string(ip) + std::string(fp), 10);
    Integer d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, fp.size());
    value = Rational(n, d);
  } else {
    if (!all_digits(body)) throw std::invalid_argument("malformed integer");
    value = Rational(Integer(std::string(body), 10));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

Rational round_to_grid(double value, unsigned log2_denominator) {
  const double scale = std::ldexp(1.0, static_cast<int>(log2_denominator));
  Integer num;
  mpz_set_d(num.get_mpz_t(), std::nearbyint(value * scale));
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, log2_denominator);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::string to_string(const Point2& p) { return "(" + to_string(p.x) + "," + to_string(p.y) + ")"; }

}  // namespace divlink

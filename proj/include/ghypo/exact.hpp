#ifndef GHYPO_EXACT_HPP
#define GHYPO_EXACT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>
#include <variant>

namespace ghypo {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Natural log of |x| for big values without overflowing a double.
double log_abs(const Integer& x);
double log_abs(const Rational& x);
double to_double(const Rational& x);

Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n);

/// Exact rational value of a double (every finite double is a dyadic rational).
Rational rational_from_double(double x);

/// Element a + b sqrt(d) of Q(sqrt d), d squarefree > 1 or the rational case b = 0.
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadraticSurd(Rational a, Rational b, Integer d);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_coefficient() const { return b_; }
  const Integer& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  int sign() const;
  QuadraticSurd abs() const { return sign() < 0 ? -*this : *this; }
  QuadraticSurd conjugate() const { return {a_, -b_, d_}; }
  /// a^2 - d b^2.
  Rational norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }

  QuadraticSurd operator-() const { return {-a_, -b_, d_}; }
  friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y);
  friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y);
  friend QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y);
  friend QuadraticSurd operator/(const QuadraticSurd& x, const QuadraticSurd& y);
  friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) { return (x - y).sign() == 0; }
  friend bool operator<(const QuadraticSurd& x, const QuadraticSurd& y) { return (x - y).sign() < 0; }

  /// floor of the value, exact.
  Integer floor() const;
  double to_double() const;
  /// log |value|; stable even when a and b sqrt(d) nearly cancel.
  double log_abs() const;
  /// Rational lo <= value <= hi with hi - lo <= 2 * 10^-digits.
  std::pair<Rational, Rational> enclose(int digits) const;

 private:
  Rational a_{0};
  Rational b_{0};
  Integer d_{0};
};

/// Exact or enclosed real coefficient.
///
/// Literal grammar: "p", "p/q", "1.25", "sqrt(d)", "(a+b*sqrt(d))/c",
/// "a-b*sqrt(d)", "dec:<decimal>~<tol>" and "liouville:K" (the partial sum
/// of 10^{-k!} for k <= K enclosed with its tail bound).
class RealSpec {
 public:
  struct Exact {
    QuadraticSurd value;
  };
  struct Enclosure {
    Rational lo;
    Rational hi;
  };

  enum class Kind { Rational, QuadraticIrrational, DecimalEnclosure };

  RealSpec() : repr_(Exact{}) {}
  static RealSpec rational(Rational value) { return RealSpec(Exact{QuadraticSurd(std::move(value))}); }
  static RealSpec surd(QuadraticSurd value) { return RealSpec(Exact{std::move(value)}); }
  static RealSpec enclosure(Rational lo, Rational hi);
  static RealSpec parse(const std::string& literal);
  /// Liouville partial sum sum_{k<=terms} 10^{-k!} with tail enclosure.
  static RealSpec liouville(int terms);

  Kind kind() const;
  bool is_exact() const { return std::holds_alternative<Exact>(repr_); }
  const QuadraticSurd& exact() const { return std::get<Exact>(repr_).value; }
  const Enclosure& bounds() const { return std::get<Enclosure>(repr_); }
  /// Rational interval containing the value.
  std::pair<Rational, Rational> enclose(int digits = 40) const;
  double to_double() const;
  /// Canonical literal; parse(to_string()) reproduces the value.
  std::string to_string() const;
  /// Exactly zero (enclosures are never exactly zero unless degenerate at 0).
  bool is_zero() const;
  /// Sign certified for every value in the enclosure; 0 means unknown or zero.
  int certified_sign() const;

 private:
  explicit RealSpec(std::variant<Exact, Enclosure> repr) : repr_(std::move(repr)) {}
  double to_double_mid() const;
  std::variant<Exact, Enclosure> repr_;
};

std::string to_string(const Rational& r);

}  // namespace ghypo

#endif  // GHYPO_EXACT_HPP

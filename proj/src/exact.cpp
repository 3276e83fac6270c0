#include "ghypo/exact.hpp"

#include <cmath>
#include <limits>
#include <regex>

#include "ghypo/error.hpp"

namespace ghypo {

namespace mp = boost::multiprecision;

double log_abs(const Integer& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  const Integer ax = mp::abs(x);
  const auto bits = static_cast<long>(mp::msb(ax));
  const long shift = bits > 60 ? bits - 60 : 0;
  const Integer top = ax >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double log_abs(const Rational& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  return log_abs(mp::numerator(x)) - log_abs(mp::denominator(x));
}

double to_double(const Rational& x) {
  if (x == 0) return 0.0;
  const double l = log_abs(x);
  if (l < 700.0 && l > -700.0) return x.convert_to<double>();
  const double mag = std::exp(l);
  return x < 0 ? -mag : mag;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw Error(ErrorCode::Precondition, "diophantine", "square root of a negative integer");
  return mp::sqrt(n);
}

bool is_perfect_square(const Integer& n) {
  if (n < 0) return false;
  const Integer r = isqrt(n);
  return r * r == n;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::Schema, "diophantine", "non-finite number");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r(scaled);
  const int shift = exp - 53;
  if (shift >= 0) {
    r *= Rational(Integer(1) << shift);
  } else {
    r /= Rational(Integer(1) << -shift);
  }
  return r;
}

namespace {

// Pulls square factors out of d: returns (k, d') with d = k^2 d'.
std::pair<Integer, Integer> split_square(Integer d) {
  Integer k = 1;
  if (is_perfect_square(d)) return {isqrt(d), 1};
  if (d < Integer(1'000'000'000'000LL)) {
    for (Integer p = 2; p * p <= d; ++p) {
      const Integer p2 = p * p;
      while (d % p2 == 0) {
        d /= p2;
        k *= p;
      }
    }
  }
  return {k, d};
}

const Integer& common_radicand(const QuadraticSurd& x, const QuadraticSurd& y) {
  if (x.is_rational()) return y.radicand();
  if (y.is_rational() || x.radicand() == y.radicand()) return x.radicand();
  throw Error(ErrorCode::Precondition, "diophantine", "operands live in different quadratic fields");
}

Integer pow10(int n) {
  Integer r = 1;
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}

Integer floor_div(const Rational& r) {
  const Integer& n = mp::numerator(r);
  const Integer& d = mp::denominator(r);
  Integer q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

}  // namespace

QuadraticSurd::QuadraticSurd(Rational a, Rational b, Integer d) : a_(std::move(a)), b_(std::move(b)), d_(0) {
  if (b_ == 0) return;
  if (d <= 0) throw Error(ErrorCode::Precondition, "diophantine", "radicand must be positive");
  auto [k, rest] = split_square(std::move(d));
  if (rest == 1) {
    a_ += b_ * Rational(k);
    b_ = 0;
    return;
  }
  b_ *= Rational(k);
  d_ = std::move(rest);
}

int QuadraticSurd::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * Rational(d_);
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
  const Integer& d = common_radicand(x, y);
  return {x.a_ + y.a_, x.b_ + y.b_, d};
}

QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) { return x + (-y); }

QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y) {
  const Integer& d = common_radicand(x, y);
  return {x.a_ * y.a_ + x.b_ * y.b_ * Rational(d), x.a_ * y.b_ + x.b_ * y.a_, d};
}

QuadraticSurd operator/(const QuadraticSurd& x, const QuadraticSurd& y) {
  const Rational n = y.norm();
  if (n == 0) throw Error(ErrorCode::Precondition, "diophantine", "division by zero");
  QuadraticSurd num = x * y.conjugate();
  return {num.a_ / n, num.b_ / n, num.d_ == 0 ? y.d_ : num.d_};
}

std::pair<Rational, Rational> QuadraticSurd::enclose(int digits) const {
  if (is_rational()) return {a_, a_};
  // |b| sqrt(d) = sqrt(N/M) = sqrt(N M) / M
  const Rational b2d = b_ * b_ * Rational(d_);
  const Integer& n = mp::numerator(b2d);
  const Integer& m = mp::denominator(b2d);
  const Integer scale = pow10(digits);
  const Integer r = isqrt(n * m * scale * scale);
  const Rational lo_abs(r, m * scale);
  const Rational hi_abs(r + 1, m * scale);
  if (b_ > 0) return {a_ + lo_abs, a_ + hi_abs};
  return {a_ - hi_abs, a_ - lo_abs};
}

Integer QuadraticSurd::floor() const {
  if (is_rational()) return floor_div(a_);
  for (int digits = 30;; digits *= 2) {
    auto [lo, hi] = enclose(digits);
    Integer flo = floor_div(lo);
    if (flo == floor_div(hi)) return flo;
  }
}

double QuadraticSurd::to_double() const {
  if (is_rational()) return ghypo::to_double(a_);
  const double root = std::sqrt(Rational(d_).convert_to<double>());
  if (a_.sign() * b_.sign() >= 0) return ghypo::to_double(a_) + ghypo::to_double(b_) * root;
  // a + b sqrt d = (a^2 - d b^2) / (a - b sqrt d), the denominator has no cancellation.
  return ghypo::to_double(norm()) / (ghypo::to_double(a_) - ghypo::to_double(b_) * root);
}

double QuadraticSurd::log_abs() const {
  if (is_rational()) return ghypo::log_abs(a_);
  const double la = ghypo::log_abs(a_);
  const double lb = ghypo::log_abs(b_) + 0.5 * ghypo::log_abs(Rational(d_));
  const double hi = std::max(la, lb);
  const double sum = a_ == 0 ? lb : hi + std::log(std::exp(la - hi) + std::exp(lb - hi));
  if (a_.sign() * b_.sign() >= 0) return sum;
  return ghypo::log_abs(norm()) - sum;
}

std::string to_string(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

namespace {

Rational parse_decimal(const std::string& text) {
  static const std::regex re(R"(^([+-]?)([0-9]*)(?:\.([0-9]*))?(?:[eE]([+-]?[0-9]+))?$)");
  std::smatch m;
  if (!std::regex_match(text, m, re) || (m[2].length() == 0 && m[3].length() == 0)) {
    throw Error(ErrorCode::Schema, "diophantine", "malformed decimal '" + text + "'");
  }
  const std::string digits = m[2].str() + m[3].str();
  Rational value(Integer(digits.empty() ? "0" : digits));
  int exponent = -static_cast<int>(m[3].length());
  if (m[4].matched) exponent += std::stoi(m[4].str());
  if (exponent >= 0) {
    value *= Rational(pow10(exponent));
  } else {
    value /= Rational(pow10(-exponent));
  }
  return m[1] == "-" ? -value : value;
}

Rational parse_rational(const std::string& text) {
  static const std::regex re(R"(^([+-]?[0-9]+)/([0-9]+)$)");
  std::smatch m;
  if (std::regex_match(text, m, re)) {
    const Integer den(m[2].str());
    if (den == 0) throw Error(ErrorCode::Schema, "diophantine", "zero denominator in '" + text + "'");
    return Rational(Integer(m[1].str()), den);
  }
  return parse_decimal(text);
}

std::string strip(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == ' ' || c == '\t') continue;
    // U+2026 horizontal ellipsis, used in decimal literals to mark truncation.
    if (static_cast<unsigned char>(c) == 0xE2 && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x80 &&
        static_cast<unsigned char>(s[i + 2]) == 0xA6) {
      i += 2;
      continue;
    }
    out.push_back(c);
  }
  while (out.find("...") != std::string::npos) out.erase(out.find("..."), 3);
  return out;
}

}  // namespace

RealSpec RealSpec::enclosure(Rational lo, Rational hi) {
  if (lo > hi) throw Error(ErrorCode::Schema, "diophantine", "enclosure with lo > hi");
  return RealSpec(Enclosure{std::move(lo), std::move(hi)});
}

RealSpec RealSpec::liouville(int terms) {
  if (terms < 1 || terms > 7) throw Error(ErrorCode::Precondition, "diophantine", "liouville terms must be in 1..7");
  Rational sum = 0;
  Integer fact = 1;
  for (int k = 1; k <= terms; ++k) {
    fact *= k;
    sum += Rational(Integer(1), pow10(static_cast<int>(fact)));
  }
  fact *= terms + 1;
  // sum_{k > K} 10^{-k!} < 2 * 10^{-(K+1)!}
  const Rational tail(Integer(2), pow10(static_cast<int>(fact)));
  return enclosure(sum, sum + tail);
}

RealSpec RealSpec::parse(const std::string& literal) {
  const std::string s = strip(literal);
  if (s.empty()) throw Error(ErrorCode::Schema, "diophantine", "empty real literal");
  static const std::regex dec_re(R"(^dec:([^~]+)~(.+)$)");
  static const std::regex range_re(R"(^range:([^:]+):([^:]+)$)");
  static const std::regex liou_re(R"(^liouville:([0-9]+)$)");
  static const std::regex frac_re(R"(^\((.*)\)/([0-9]+)$)");
  static const std::regex surd_re(R"(^(?:([+-]?[0-9]+)(?=[+-]))?([+-]?)(?:([0-9]+)\*)?sqrt\(([0-9]+)\)$)");
  std::smatch m;
  if (std::regex_match(s, m, dec_re)) {
    const Rational mid = parse_decimal(m[1].str());
    const Rational tol = parse_decimal(m[2].str());
    if (tol < 0) throw Error(ErrorCode::Schema, "diophantine", "negative enclosure tolerance");
    return enclosure(mid - tol, mid + tol);
  }
  if (std::regex_match(s, m, range_re)) return enclosure(parse_rational(m[1].str()), parse_rational(m[2].str()));
  if (std::regex_match(s, m, liou_re)) return liouville(std::stoi(m[1].str()));

  std::string body = s;
  Integer den = 1;
  if (std::regex_match(s, m, frac_re)) {
    body = m[1].str();
    den = Integer(m[2].str());
    if (den == 0) throw Error(ErrorCode::Schema, "diophantine", "zero denominator in '" + literal + "'");
  }
  if (std::regex_match(body, m, surd_re)) {
    const Rational a = m[1].matched ? Rational(Integer(m[1].str())) : Rational(0);
    Rational b = m[3].matched ? Rational(Integer(m[3].str())) : Rational(1);
    if (m[2] == "-") b = -b;
    const Integer d(m[4].str());
    if (d == 0) return rational(a / Rational(den));
    return surd(QuadraticSurd(a / Rational(den), b / Rational(den), d));
  }
  if (den != 1) return rational(parse_rational(body) / Rational(den));
  try {
    return rational(parse_rational(body));
  } catch (const Error&) {
    throw Error(ErrorCode::Schema, "diophantine", "malformed real literal '" + literal + "'");
  }
}

RealSpec::Kind RealSpec::kind() const {
  if (!is_exact()) return Kind::DecimalEnclosure;
  return exact().is_rational() ? Kind::Rational : Kind::QuadraticIrrational;
}

std::pair<Rational, Rational> RealSpec::enclose(int digits) const {
  if (is_exact()) return exact().enclose(digits);
  return {bounds().lo, bounds().hi};
}

double RealSpec::to_double() const {
  if (is_exact()) return exact().to_double();
  return to_double_mid();
}

double RealSpec::to_double_mid() const {
  const auto& e = bounds();
  return ghypo::to_double((e.lo + e.hi) / 2);
}

std::string RealSpec::to_string() const {
  if (!is_exact()) return "range:" + ghypo::to_string(bounds().lo) + ":" + ghypo::to_string(bounds().hi);
  const QuadraticSurd& v = exact();
  if (v.is_rational()) return ghypo::to_string(v.rational_part());
  const Integer& da = mp::denominator(v.rational_part());
  const Integer& db = mp::denominator(v.surd_coefficient());
  const Integer den = da / mp::gcd(da, db) * db;
  const Integer a = mp::numerator(v.rational_part() * Rational(den));
  const Integer b = mp::numerator(v.surd_coefficient() * Rational(den));
  const std::string sign = b < 0 ? "-" : "+";
  const Integer babs = mp::abs(b);
  return "(" + a.str() + sign + babs.str() + "*sqrt(" + v.radicand().str() + "))/" + den.str();
}

bool RealSpec::is_zero() const { return is_exact() && exact().sign() == 0; }

int RealSpec::certified_sign() const {
  if (is_exact()) return exact().sign();
  if (bounds().lo > 0) return 1;
  if (bounds().hi < 0) return -1;
  return 0;
}

}  // namespace ghypo

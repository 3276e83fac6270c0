#include "ghypo/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <tuple>

#include "ghypo/error.hpp"

namespace ghypo {

namespace mp = boost::multiprecision;

namespace {

Integer floor_div(const Integer& n, const Integer& d) {
  Integer q = n / d;
  if (n % d != 0 && ((n < 0) != (d < 0))) q -= 1;
  return q;
}

Integer floor_of(const Rational& r) { return floor_div(mp::numerator(r), mp::denominator(r)); }

Rational rational_pow(const Rational& base, int n) {
  Rational r = 1;
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

// Exact expansion of (P + sqrt(D)) / Q via the classical recurrence; D is not a square.
class SurdExpansion {
 public:
  explicit SurdExpansion(const QuadraticSurd& x) {
    const Integer& da = mp::denominator(x.rational_part());
    const Integer& db = mp::denominator(x.surd_coefficient());
    const Integer c = da / mp::gcd(da, db) * db;
    const Integer a = mp::numerator(x.rational_part() * Rational(c));
    const Integer b = mp::numerator(x.surd_coefficient() * Rational(c));
    D_ = b * b * x.radicand();
    P_ = b > 0 ? a : -a;
    Q_ = b > 0 ? c : -c;
    if ((D_ - P_ * P_) % Q_ != 0) {
      const Integer aq = mp::abs(Q_);
      P_ *= aq;
      D_ *= Q_ * Q_;
      Q_ *= aq;
    }
    root_ = isqrt(D_);
  }

  Integer next() {
    seen_.emplace(std::make_pair(P_, Q_), index_);
    const Integer a = Q_ > 0 ? floor_div(P_ + root_, Q_) : floor_div(P_ + root_ + 1, Q_);
    P_ = a * Q_ - P_;
    Q_ = (D_ - P_ * P_) / Q_;
    ++index_;
    if (!period_start_) {
      auto it = seen_.find({P_, Q_});
      if (it != seen_.end()) {
        period_start_ = it->second;
        period_length_ = index_ - it->second;
      }
    }
    return a;
  }

  std::optional<std::size_t> period_start() const { return period_start_; }
  std::optional<std::size_t> period_length() const { return period_length_; }

 private:
  Integer P_, Q_, D_, root_;
  std::size_t index_ = 0;
  std::map<std::pair<Integer, Integer>, std::size_t> seen_;
  std::optional<std::size_t> period_start_;
  std::optional<std::size_t> period_length_;
};

ContinuedFraction expand_rational(Rational x, std::size_t n_terms) {
  ContinuedFraction cf;
  while (cf.partial_quotients.size() < n_terms) {
    const Integer a = floor_of(x);
    cf.partial_quotients.push_back(a);
    const Rational frac = x - Rational(a);
    if (frac == 0) {
      cf.terminated = true;
      break;
    }
    x = 1 / frac;
  }
  return cf;
}

ContinuedFraction expand_enclosure(Rational lo, Rational hi, std::size_t n_terms) {
  ContinuedFraction cf;
  while (cf.partial_quotients.size() < n_terms) {
    const Integer a_lo = floor_of(lo);
    const Integer a_hi = floor_of(hi);
    if (a_lo != a_hi) {
      cf.limited_by_precision = true;
      break;
    }
    const Rational f_lo = lo - Rational(a_lo);
    const Rational f_hi = hi - Rational(a_hi);
    if (f_lo == 0 || f_hi == 0) {
      // An endpoint is a rational whose expansion ends here; nearby reals may
      // continue with a_k - 1, so a_k is only certified for degenerate enclosures.
      if (lo == hi) {
        cf.partial_quotients.push_back(a_lo);
        cf.terminated = true;
      } else {
        cf.limited_by_precision = true;
      }
      break;
    }
    cf.partial_quotients.push_back(a_lo);
    lo = 1 / f_lo;
    hi = 1 / f_hi;
  }
  if (cf.partial_quotients.empty()) {
    throw Error(ErrorCode::Precision, "diophantine", "enclosure too wide to certify the first partial quotient");
  }
  return cf;
}

// Convergents with q <= q_bound (at most max_terms of them).
std::vector<Convergent> bounded_convergents(const RealSpec& c, const Integer& q_bound, std::size_t max_terms) {
  std::vector<Convergent> out;
  if (c.kind() == RealSpec::Kind::QuadraticIrrational) {
    SurdExpansion expansion(c.exact());
    Integer p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    for (std::size_t k = 0; k < max_terms; ++k) {
      const Integer a = expansion.next();
      Integer p = a * p1 + p2;
      Integer q = a * q1 + q2;
      if (q > q_bound) break;
      p2 = p1;
      q2 = q1;
      p1 = p;
      q1 = q;
      out.push_back({std::move(p), std::move(q)});
    }
    return out;
  }
  const ContinuedFraction cf = continued_fraction(c, max_terms);
  for (const auto& cv : cf.convergents) {
    if (cv.q > q_bound) break;
    out.push_back(cv);
  }
  return out;
}

// max over the value set of c of |c - p/q|.
Rational max_distance(const RealSpec& c, const Convergent& cv) {
  const Rational x(cv.p, cv.q);
  const auto& b = c.bounds();
  return std::max(mp::abs(b.lo - x), mp::abs(b.hi - x));
}

// |c - p/q| * q^N < 1, decided exactly.
bool beats_power(const RealSpec& c, const Convergent& cv, int N) {
  const Rational qn = rational_pow(Rational(cv.q), N);
  if (c.is_exact()) {
    const QuadraticSurd scaled = (c.exact() - QuadraticSurd(Rational(cv.p, cv.q))).abs() * QuadraticSurd(qn);
    return (QuadraticSurd(Rational(1)) - scaled).sign() > 0;
  }
  return max_distance(c, cv) * qn < 1;
}

}  // namespace

std::vector<Convergent> convergents_of(const std::vector<Integer>& quotients) {
  std::vector<Convergent> out;
  out.reserve(quotients.size());
  Integer p1 = 1, p2 = 0, q1 = 0, q2 = 1;
  for (const auto& a : quotients) {
    Integer p = a * p1 + p2;
    Integer q = a * q1 + q2;
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
    out.push_back({std::move(p), std::move(q)});
  }
  return out;
}

ContinuedFraction continued_fraction(const RealSpec& c, std::size_t n_terms) {
  ContinuedFraction cf;
  switch (c.kind()) {
    case RealSpec::Kind::Rational:
      cf = expand_rational(c.exact().rational_part(), n_terms);
      break;
    case RealSpec::Kind::QuadraticIrrational: {
      SurdExpansion expansion(c.exact());
      for (std::size_t k = 0; k < n_terms; ++k) cf.partial_quotients.push_back(expansion.next());
      cf.period_start = expansion.period_start();
      cf.period_length = expansion.period_length();
      break;
    }
    case RealSpec::Kind::DecimalEnclosure:
      cf = expand_enclosure(c.bounds().lo, c.bounds().hi, n_terms);
      break;
  }
  cf.convergents = convergents_of(cf.partial_quotients);
  return cf;
}

PellSolution pell_fundamental(const Integer& D) {
  if (D <= 0 || is_perfect_square(D)) {
    throw Error(ErrorCode::Precondition, "diophantine", "Pell equation needs a positive nonsquare D, got " + D.str());
  }
  // sqrt(D) = [a0; a1, ..., a_r] with a_r = 2 a0 closing the period.
  const Integer a0 = isqrt(D);
  Integer m = 0, d = 1, a = a0;
  Integer p1 = a0, p2 = 1, q1 = 1, q2 = 0;
  for (;;) {
    if (p1 * p1 - D * q1 * q1 == 1) return {p1, q1, D};
    m = d * a - m;
    d = (D - m * m) / d;
    a = (a0 + m) / d;
    Integer p = a * p1 + p2;
    Integer q = a * q1 + q2;
    p2 = p1;
    q2 = q1;
    p1 = std::move(p);
    q1 = std::move(q);
  }
}

std::vector<PellSolution> pell_solutions(const Integer& D, std::size_t count) {
  if (count < 1) throw Error(ErrorCode::Precondition, "diophantine", "count must be >= 1");
  const PellSolution first = pell_fundamental(D);
  std::vector<PellSolution> out{first};
  while (out.size() < count) {
    const auto& prev = out.back();
    out.push_back({first.u * prev.u + D * first.m * prev.m, first.m * prev.u + first.u * prev.m, D});
  }
  return out;
}

std::vector<Integer> pell_levels(std::size_t count) {
  std::vector<Integer> levels;
  for (const auto& s : pell_solutions(8, count)) levels.push_back((s.u - 1) / 2);
  return levels;
}

TorusMinGain torus_min_gain(const RealSpec& c, int radius, int N) {
  if (radius < 1) throw Error(ErrorCode::Precondition, "diophantine", "radius must be >= 1");
  const double cd = c.to_double();
  double width = 0.0;
  if (!c.is_exact()) width = to_double(c.bounds().hi - c.bounds().lo);

  struct Approx {
    int xi, eta;
    double value, error;
  };
  std::vector<Approx> points;
  double best_upper = INFINITY;
  // One representative of each pair {p, -p}: eta > 0, or eta = 0 and xi > 0.
  for (int eta = 0; eta <= radius; ++eta) {
    for (int xi = -(radius - eta); xi <= radius - eta; ++xi) {
      if (eta == 0 && xi <= 0) continue;
      const int l1 = std::abs(xi) + eta;
      const double w = std::pow(1.0 + l1, -N);
      const double v = std::abs(xi + cd * eta) * w;
      const double err = (1e-12 * (std::abs(xi) + std::abs(cd) * eta + 1.0) + width * eta) * w + 1e-12 * v;
      points.push_back({xi, eta, v, err});
      best_upper = std::min(best_upper, v + err);
    }
  }

  struct Candidate {
    Torus2Label rep;
    int l1;
    Rational lo, hi;
    std::optional<QuadraticSurd> exact;
  };
  std::vector<Candidate> candidates;
  for (const auto& pt : points) {
    if (pt.value - pt.error > best_upper) continue;
    const int l1 = std::abs(pt.xi) + pt.eta;
    const Rational weight = N >= 0 ? 1 / rational_pow(Rational(1 + l1), N) : rational_pow(Rational(1 + l1), -N);
    const Torus2Label rep = std::min(Torus2Label{pt.xi, pt.eta}, Torus2Label{-pt.xi, -pt.eta});
    if (c.is_exact()) {
      QuadraticSurd v = (QuadraticSurd(Rational(pt.xi)) + c.exact() * QuadraticSurd(Rational(pt.eta))).abs() *
                        QuadraticSurd(weight);
      auto [lo, hi] = v.enclose(40);
      candidates.push_back({rep, l1, lo, hi, std::move(v)});
    } else {
      const Rational e1 = pt.xi + c.bounds().lo * pt.eta;
      const Rational e2 = pt.xi + c.bounds().hi * pt.eta;
      Rational lo = (e1.sign() * e2.sign() > 0) ? std::min(mp::abs(e1), mp::abs(e2)) : Rational(0);
      Rational hi = std::max(mp::abs(e1), mp::abs(e2));
      candidates.push_back({rep, l1, lo * weight, hi * weight, std::nullopt});
    }
  }

  auto key_less = [](const Candidate& a, const Candidate& b) {
    return std::tie(a.l1, a.rep) < std::tie(b.l1, b.rep);
  };
  const Candidate* best = nullptr;
  for (const auto& cand : candidates) {
    if (!best) {
      best = &cand;
      continue;
    }
    if (cand.exact) {
      const int s = (*cand.exact - *best->exact).sign();
      if (s < 0 || (s == 0 && key_less(cand, *best))) best = &cand;
    } else if (cand.hi < best->hi || (cand.hi == best->hi && key_less(cand, *best))) {
      best = &cand;
    }
  }
  if (!c.is_exact()) {
    for (const auto& cand : candidates) {
      if (&cand != best && cand.lo <= best->hi) {
        throw Error(ErrorCode::Precision, "diophantine",
                    "enclosure too wide to order candidates " + to_string(FrequencyLabel{best->rep}) + " and " +
                        to_string(FrequencyLabel{cand.rep}) + "; widen precision");
      }
    }
  }
  TorusMinGain out;
  out.lo = best->lo;
  out.hi = best->hi;
  out.argmin = best->rep;
  out.exact_zero = best->exact && best->exact->sign() == 0;
  out.approx = best->exact ? best->exact->to_double() : to_double((best->lo + best->hi) / 2);
  return out;
}

std::vector<LiouvilleWitness> liouville_witnesses(const RealSpec& c, int n_max, const Integer& q_bound) {
  if (c.kind() == RealSpec::Kind::Rational) {
    throw Error(ErrorCode::Precondition, "diophantine", "Liouville search needs an irrational or enclosed value");
  }
  std::vector<LiouvilleWitness> out;
  for (const auto& cv : bounded_convergents(c, q_bound, 4096)) {
    if (cv.q < kMinWitnessDenominator) continue;
    for (int N = n_max; N >= 3; --N) {
      if (beats_power(c, cv, N)) {
        out.push_back({cv.p, cv.q, N});
        break;
      }
    }
  }
  return out;
}

CoefficientClass classify_coefficient(const ComplexSpec& c) {
  if (c.im.certified_sign() != 0) return ImNonzero{};
  if (!c.im.is_zero()) {
    throw Error(ErrorCode::Precision, "diophantine", "imaginary part enclosure contains 0; widen precision");
  }
  if (c.re.kind() == RealSpec::Kind::Rational) {
    const Rational& r = c.re.exact().rational_part();
    return RationalCoefficient{mp::numerator(r), mp::denominator(r)};
  }
  if (!c.re.is_exact() && c.re.bounds().lo == c.re.bounds().hi) {
    const Rational& r = c.re.bounds().lo;
    return RationalCoefficient{mp::numerator(r), mp::denominator(r)};
  }
  static const Integer kQBound = Integer(10) * Integer("1000000000000000000000000000000");
  IrrationalEvidence ev;
  const auto cvs = bounded_convergents(c.re, kQBound, 4096);
  for (const auto& cv : cvs) {
    if (cv.q < kMinWitnessDenominator) continue;
    double log_dist = 0.0;
    if (c.re.is_exact()) {
      log_dist = (c.re.exact() - QuadraticSurd(Rational(cv.p, cv.q))).log_abs();
    } else {
      log_dist = log_abs(max_distance(c.re, cv));
    }
    ev.mu_hat = -log_dist / log_abs(cv.q);
    ++ev.convergents_used;
  }
  ev.witnesses = liouville_witnesses(c.re, 10, kQBound);
  return ev;
}

}  // namespace ghypo

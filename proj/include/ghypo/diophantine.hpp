#ifndef GHYPO_DIOPHANTINE_HPP
#define GHYPO_DIOPHANTINE_HPP

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "ghypo/exact.hpp"
#include "ghypo/spectral_models.hpp"

namespace ghypo {

struct Convergent {
  Integer p;
  Integer q;
};

struct ContinuedFraction {
  std::vector<Integer> partial_quotients;
  std::vector<Convergent> convergents;
  /// The expansion ended because the value is rational.
  bool terminated = false;
  /// For quadratic irrationals: index where the periodic tail starts and its length.
  std::optional<std::size_t> period_start;
  std::optional<std::size_t> period_length;
  /// For enclosures: expansion stopped because the endpoints disagree.
  bool limited_by_precision = false;
};

/// Convergents p_k / q_k of a list of partial quotients.
std::vector<Convergent> convergents_of(const std::vector<Integer>& quotients);

ContinuedFraction continued_fraction(const RealSpec& c, std::size_t n_terms);

struct PellSolution {
  Integer u;
  Integer m;
  Integer D;
};

/// Smallest nontrivial solution of u^2 - D m^2 = 1, read off the period of sqrt(D).
PellSolution pell_fundamental(const Integer& D);

/// First `count` solutions in increasing u.
std::vector<PellSolution> pell_solutions(const Integer& D, std::size_t count);

/// Spin levels ell = (u - 1) / 2 of the D = 8 family; each has ell(ell + 1) = 2 m^2.
std::vector<Integer> pell_levels(std::size_t count);

struct TorusMinGain {
  /// Certified rational enclosure of min |xi + c eta| (1 + |xi| + |eta|)^{-N}.
  Rational lo;
  Rational hi;
  Torus2Label argmin;
  bool exact_zero = false;
  double approx = 0.0;
};

/// Exact minimum over 0 < |xi| + |eta| <= radius. Ties go to the smallest
/// |xi| + |eta|, then the lexicographically smallest pair.
TorusMinGain torus_min_gain(const RealSpec& c, int radius, int N);

struct LiouvilleWitness {
  Integer p;
  Integer q;
  int n_achieved = 0;
};

/// Denominators below this carry no information about asymptotic approximability.
inline constexpr int kMinWitnessDenominator = 10;

/// Convergents p/q with q <= q_bound and |c - p/q| < q^{-N} for some 3 <= N <= n_max
/// (every convergent already achieves N = 2). The reported N is the largest one.
std::vector<LiouvilleWitness> liouville_witnesses(const RealSpec& c, int n_max, const Integer& q_bound);

struct ComplexSpec {
  RealSpec re;
  RealSpec im;
};

struct ImNonzero {};
struct RationalCoefficient {
  Integer p;
  Integer q;
};
struct IrrationalEvidence {
  /// Empirical irrationality exponent -log|c - p/q| / log q at the deepest convergent.
  double mu_hat = 0.0;
  std::size_t convergents_used = 0;
  std::vector<LiouvilleWitness> witnesses;
};

using CoefficientClass = std::variant<ImNonzero, RationalCoefficient, IrrationalEvidence>;

CoefficientClass classify_coefficient(const ComplexSpec& c);

}  // namespace ghypo

#endif  // GHYPO_DIOPHANTINE_HPP

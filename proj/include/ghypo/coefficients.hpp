#ifndef GHYPO_COEFFICIENTS_HPP
#define GHYPO_COEFFICIENTS_HPP

#include <string>
#include <variant>
#include <vector>

#include "ghypo/coefficient_field.hpp"
#include "ghypo/symbols.hpp"

namespace ghypo {

/// sqrt of sum over the window of (1 + lambda)^{2s/nu} ||u^(j)||^2, summed in ordinal order.
double sobolev_norm(const CoefficientField& u, double s, const SpectralModel& model, const Window& window);

/// Every decay rate N <= n_probe validated on the window.
struct SmoothEvidence {
  int n_probe = 10;
};
/// Smallest integer N with ||u^(j)|| <= C (1 + lambda)^N validated on the window.
struct DistributionOrder {
  int N = 0;
};
struct Indeterminate {
  std::string reason;
};

struct RegularityReport {
  std::variant<SmoothEvidence, DistributionOrder, Indeterminate> kind;
  /// Least-squares slope of log ||u^(j)|| against log(1 + lambda) over nonzero entries (NaN if fewer than 2).
  double decay_slope = 0.0;
  std::string window;

  bool smooth() const { return std::holds_alternative<SmoothEvidence>(kind); }
};

/// Largest growth exponent tried before giving up.
inline constexpr int kMaxDistributionOrder = 40;

/// A bound C (1 + lambda)^N counts as validated when the largest value of
/// ||u^(j)|| (1 + lambda)^{-N} over the upper half of the window (in log(1 + lambda))
/// does not exceed the largest over the lower half.
RegularityReport classify_regularity(const CoefficientField& u, const SpectralModel& model, const Window& window,
                                     int n_probe = 10);

struct CounterexampleCertificate {
  int k = 0;
  FrequencyIndex freq;
  /// ||sigma(j_k) a_{j_k}||.
  double residual = 0.0;
  /// (1 + lambda_{j_k})^{-k}.
  double bound = 0.0;
  bool exact_zero = false;
};

struct Counterexample {
  CoefficientField f;
  std::vector<FrequencyIndex> frequencies;
  std::vector<CounterexampleCertificate> certificates;
};

/// f^(j_k) = a_{j_k} with ||sigma(j_k) a_{j_k}|| < (1 + lambda_{j_k})^{-k}, k = 1..K, and
/// lambda_{j_k} strictly increasing. Throws SearchExhausted when some k has no candidate.
Counterexample build_counterexample(const MatrixSymbol& symbol, const SpectralModel& model, int K,
                                    const Window& window);

}  // namespace ghypo

#endif  // GHYPO_COEFFICIENTS_HPP

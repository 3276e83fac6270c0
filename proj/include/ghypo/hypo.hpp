#ifndef GHYPO_HYPO_HPP
#define GHYPO_HYPO_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ghypo/symbols.hpp"

namespace ghypo {

/// Frequencies whose smallest gain is at most tol * max(1, ||sigma(j)||), in ordinal order.
std::vector<FrequencyIndex> singular_scan(const MatrixSymbol& symbol, const SpectralModel& model,
                                          const Window& window, double tol = kSingularTol);
std::vector<FrequencyIndex> singular_scan(std::span<const GainSample> samples, double tol = kSingularTol);

/// gain(j) >= L (1 + lambda_j)^{m/nu} for every sampled j with ordinal >= R.
///
/// With nu = 2 the exponent m is the power of <xi> = (1 + lambda)^{1/2}.
struct GrowthFit {
  double L = 0.0;
  double m = 0.0;
  std::int64_t R = 0;
  /// max over sampled j >= R of (L b_j^m - gain_j) / gain_j; never positive.
  double residual = 0.0;
  std::size_t samples_used = 0;
};

/// Lower-envelope fit. The exponent balances the smallest normalized gains
/// gain * b^{-m}, b = (1 + lambda)^{1/nu}, between the two halves (in log b)
/// of the upper half of the post-singular range; L is then the largest
/// constant valid on every sample past R.
GrowthFit fit_growth(std::span<const GainSample> samples, double nu, double tol = kSingularTol);

enum class CertificateFamily { RationalResonance, ImaginaryHalfInteger, PellFamily };

std::string to_string(CertificateFamily family);

/// Analytic proof that the operator is not globally hypoelliptic.
struct Certificate {
  CertificateFamily family;
  std::string description;
  /// Exact zeros of the symbol; at least three.
  std::vector<FrequencyIndex> witnesses;
};

/// Recognized families: torus a d_t + b d_x with b / a rational, SU(2) a d0 + q
/// with i q / a a half-integer, SU(2) a (neglap + 2 d0^2). Needs exact coefficients.
std::optional<Certificate> certify(const OperatorSpec& spec);

/// Fitted exponent, or -inf when a certificate exists. Throws NoFit.
double estimate_h(const OperatorSpec& spec, const SpectralModel& model, const Window& window,
                  double tol = kSingularTol);

struct EmpiricalGH {
  GrowthFit fit;
  double h_hat = 0.0;
};

struct Inconclusive {
  std::string reason;
  std::vector<FrequencyIndex> singular;
};

struct Verdict {
  std::variant<Certificate, EmpiricalGH, Inconclusive> kind;
  /// Singular frequencies found in the window (empty for certificates).
  std::vector<FrequencyIndex> singular;
};

Verdict verdict(const OperatorSpec& spec, const SpectralModel& model, const Window& window,
                double tol = kSingularTol);
/// Same, reusing gain samples already computed for the window.
Verdict verdict(const OperatorSpec& spec, std::span<const GainSample> samples, double nu, double tol = kSingularTol);

}  // namespace ghypo

#endif  // GHYPO_HYPO_HPP

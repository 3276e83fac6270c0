#ifndef GHYPO_SUBELLIPTIC_HPP
#define GHYPO_SUBELLIPTIC_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ghypo/coefficient_field.hpp"
#include "ghypo/symbols.hpp"

namespace ghypo {

struct KernelBlock {
  FrequencyIndex freq;
  /// Orthonormal null basis of the block (block coordinates); repeated in every replica.
  ComplexMatrix basis;
  /// nullity of the full sigma(j) = columns * replicas.
  std::int64_t dim() const { return basis.cols() * freq.replicas(); }
};

struct TruncatedKernel {
  std::vector<KernelBlock> per_frequency;
  std::int64_t total_dim = 0;
  /// Kernel frequencies reach the upper half of the window (in log(1 + lambda)),
  /// hinting at an infinite-dimensional kernel.
  bool reaches_boundary = false;
  std::string window;

  /// Null basis at a frequency, or an empty matrix.
  ComplexMatrix basis_at(const FrequencyIndex& freq) const;
};

TruncatedKernel kernel_on_truncation(const MatrixSymbol& symbol, const SpectralModel& model, const Window& window,
                                     double tol = kSingularTol);

/// Smallest nonzero singular value of sigma(j); +inf when the block is all kernel.
double per_frequency_constant(const MatrixSymbol& symbol, const FrequencyIndex& freq, double tol = kSingularTol);

struct SubellipticReport {
  double s = 0.0;
  double m = 0.0;
  /// Optimal C in ||Pf||_s >= C ||f||_{s+m} for f orthogonal to the kernel on the window.
  double C_star = 0.0;
  /// max over kernel frequencies of (1 + lambda)^{m/nu}; 0 without kernel.
  double K1 = 0.0;
  /// max(K1, 1 / C_star), sufficient in ||f||_{s+m} <= K (||f||_s + ||Pf||_s).
  double K_star = 0.0;
  FrequencyIndex witness_freq;
  /// Unit vector in full coordinates attaining C_star.
  ComplexVector witness_vector;
  TruncatedKernel kernel;
  std::string window;
};

SubellipticReport best_alpha_constant(const MatrixSymbol& symbol, const SpectralModel& model, double s, double m,
                                      const Window& window, double tol = kSingularTol);

/// The witness as a coefficient field.
CoefficientField witness_field(const SubellipticReport& report, ModelKind model);

struct InequalityCheck {
  bool pass = false;
  /// f had no component outside the kernel.
  bool vacuous = false;
  /// alpha: ||Pf||_s / ||f||_{s+m} after projection; beta: ||f||_{s+m} / (||f||_s + ||Pf||_s).
  double ratio = 0.0;
  /// ||f - proj f||_s removed by the kernel projection (alpha only).
  double removed_norm = 0.0;
};

/// Projects f off the truncated kernel, then tests ||Pf||_s >= C ||f||_{s+m}.
InequalityCheck check_alpha(const MatrixSymbol& symbol, const SpectralModel& model, const CoefficientField& f,
                            double s, double m, double C, const Window& window, double tol = kSingularTol);

/// Tests ||f||_{s+m} <= K (||f||_s + ||Pf||_s); ratio is the smallest K that works for f.
InequalityCheck check_beta(const MatrixSymbol& symbol, const SpectralModel& model, const CoefficientField& f,
                           double s, double m, double K, const Window& window);

/// f minus its projection on the truncated kernel.
CoefficientField project_off_kernel(const CoefficientField& f, const TruncatedKernel& kernel);

/// Gaussian coefficient vectors on n_freq distinct frequencies drawn from the window.
CoefficientField random_field(const SpectralModel& model, const Window& window, int n_freq, std::mt19937_64& rng);

struct ProbeSummary {
  int probes = 0;
  int alpha_failures = 0;
  int beta_failures = 0;
  int vacuous = 0;
  double min_alpha_ratio = 0.0;
  double max_beta_ratio = 0.0;
  std::uint64_t seed = 0;
};

/// Random probes of both inequalities at C = C_star and K = K_star.
ProbeSummary run_probes(const MatrixSymbol& symbol, const SpectralModel& model, const SubellipticReport& report,
                        const Window& window, int probes, std::uint64_t seed, int n_freq = 20);

}  // namespace ghypo

#endif  // GHYPO_SUBELLIPTIC_HPP

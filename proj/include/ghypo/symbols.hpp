#ifndef GHYPO_SYMBOLS_HPP
#define GHYPO_SYMBOLS_HPP

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ghypo/coefficient_field.hpp"
#include "ghypo/exact.hpp"
#include "ghypo/linalg.hpp"
#include "ghypo/spectral_models.hpp"

namespace ghypo {

/// sigma(j) for one frequency, stored in reduced form.
///
/// `values` is the d x d block, or a d x 1 column of diagonal entries when
/// `diagonal` is set. The full symbol is `replicas` copies of the block on
/// the diagonal, so its singular values are those of the block.
struct SymbolBlock {
  ComplexMatrix values;
  bool diagonal = false;
  int replicas = 1;

  static SymbolBlock dense(ComplexMatrix block, int replicas = 1);
  static SymbolBlock diag(ComplexVector entries, int replicas = 1);

  Eigen::Index block_size() const { return values.rows(); }
  Eigen::Index full_size() const { return values.rows() * replicas; }
  ComplexMatrix dense_block() const;
  ComplexMatrix expand() const;

  Vector<double> singular_values() const;
  double gain() const;
  double opnorm() const;
  /// gain <= tol * max(1, opnorm).
  bool is_singular(double tol = kSingularTol) const;
  /// Smallest singular value above the zero threshold; +inf when the block vanishes.
  double smallest_nonzero_singular_value(double tol = kSingularTol) const;

  ComplexVector apply(const ComplexVector& u) const;
  /// Unit vector attaining the smallest gain, in full coordinates (first replica),
  /// first nonzero component real positive.
  ComplexVector minimizing_vector() const;
  /// Orthonormal columns spanning the block's numerical null space (block coordinates).
  ComplexMatrix null_basis(double tol = kSingularTol) const;
  /// Right singular pairs (block coordinates): singular values and vectors, decreasing.
  std::pair<Vector<double>, ComplexMatrix> right_singular_pairs() const;
};

enum class Structure { Dense, Diagonal, Su2Block };

/// Matrix symbol of an invariant operator: frequency -> d_j x d_j matrix.
class MatrixSymbol {
 public:
  using Evaluator = std::function<SymbolBlock(const FrequencyIndex&)>;

  MatrixSymbol(ModelKind model, Structure structure, Evaluator evaluator, double nu = 2.0);

  static MatrixSymbol identity(ModelKind model);

  ModelKind model() const { return model_; }
  Structure structure() const { return structure_; }
  double nu() const { return nu_; }

  SymbolBlock block(const FrequencyIndex& freq) const;
  ComplexMatrix operator()(const FrequencyIndex& freq) const { return block(freq).expand(); }

 private:
  ModelKind model_;
  Structure structure_;
  Evaluator evaluator_;
  double nu_;
};

MatrixSymbol operator+(const MatrixSymbol& a, const MatrixSymbol& b);
/// Frequency-wise product a(j) b(j).
MatrixSymbol operator*(const MatrixSymbol& a, const MatrixSymbol& b);
MatrixSymbol operator*(Complex c, const MatrixSymbol& a);

/// (Pu)^(j) = sigma(j) u^(j) for every frequency in the window.
CoefficientField apply_symbol(const MatrixSymbol& symbol, const CoefficientField& u, const Window& window);

struct GainSample {
  FrequencyIndex freq;
  double gain = 0.0;
  double opnorm = 0.0;
};

std::vector<GainSample> gain_samples(const MatrixSymbol& symbol, const SpectralModel& model, const Window& window);

struct OrderEstimate {
  /// -inf for the zero symbol.
  double order_hat = 0.0;
  double C_hat = 0.0;
};

/// Order from the upper envelope of ||sigma(j)|| against (1 + lambda)^{1/nu}.
OrderEstimate estimate_order(const MatrixSymbol& symbol, const SpectralModel& model, const Window& window);
/// Uses only samples with lambda <= lambda_max (complete shells).
OrderEstimate estimate_order(std::span<const GainSample> samples, double nu,
                             double lambda_max = std::numeric_limits<double>::infinity());

// --- operator descriptions ---------------------------------------------------

/// Complex coefficient with optional exact parts (needed by certificates).
struct Coefficient {
  Complex value;
  std::optional<RealSpec> exact_re;
  std::optional<RealSpec> exact_im;

  bool is_exact() const { return exact_re && exact_im; }
  /// Integer and short dyadic parts (multiples of 2^-10) are taken as exact;
  /// anything else is treated as a truncated constant.
  static Coefficient from_double(Complex v);
  static Coefficient from_exact(RealSpec re, RealSpec im);
};

/// sum coeff (i xi)^deg_t (i eta)^deg_x.
struct TorusTerm {
  Coefficient coeff;
  int deg_t = 0;
  int deg_x = 0;
};
struct TorusPoly {
  std::vector<TorusTerm> terms;
};

/// Diagonal SU(2) symbol: d0 -> i m, neglap -> ell (ell + 1).
struct Su2Term {
  Coefficient coeff;
  int deg_d0 = 0;
  int deg_neglap = 0;
};
struct Su2DiagPoly {
  std::vector<Su2Term> terms;
};

/// Explicit per-frequency matrices.
struct MatrixTable {
  std::string path;
  ModelKind model = ModelKind::Torus2;
  std::map<FrequencyLabel, ComplexMatrix> entries;
};

struct OperatorSpec {
  std::variant<TorusPoly, Su2DiagPoly, MatrixTable> kind;

  ModelKind model() const;
};

ComplexMatrix eval_symbol(const OperatorSpec& spec, const FrequencyIndex& freq);
SymbolBlock eval_block(const OperatorSpec& spec, const FrequencyIndex& freq);
MatrixSymbol make_symbol(const OperatorSpec& spec, const SpectralModel& model);

}  // namespace ghypo

#endif  // GHYPO_SYMBOLS_HPP

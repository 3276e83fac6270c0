#ifndef GHYPO_SPECTRAL_MODELS_HPP
#define GHYPO_SPECTRAL_MODELS_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ghypo {

enum class ModelKind { Torus2, Su2 };

std::string to_string(ModelKind kind);

/// Character (xi, eta) of the 2-torus; eigenvalue xi^2 + eta^2.
struct Torus2Label {
  int xi = 0;
  int eta = 0;
  auto operator<=>(const Torus2Label&) const = default;
};

/// Irreducible representation of SU(2) of spin ell = twice_ell / 2.
struct Su2Label {
  int twice_ell = 0;
  auto operator<=>(const Su2Label&) const = default;
};

using FrequencyLabel = std::variant<Torus2Label, Su2Label>;

std::string to_string(const FrequencyLabel& label);

/// One spectral block of the reference Laplacian.
///
/// `ordinal` is the position of the block in the model's global enumeration
/// (nondecreasing eigenvalue, ties by label), so it does not depend on the
/// window a frequency was enumerated from.
struct FrequencyIndex {
  std::int64_t ordinal = 0;
  double lambda = 0.0;
  int dim = 1;
  FrequencyLabel label;

  ModelKind model() const {
    return std::holds_alternative<Torus2Label>(label) ? ModelKind::Torus2 : ModelKind::Su2;
  }
  /// Size of the irreducible block (2 ell + 1 on SU(2), 1 on the torus).
  int block_dim() const;
  /// Number of identical copies of the block on the diagonal of a left-invariant symbol.
  int replicas() const { return dim / block_dim(); }
  double ell() const;
};

struct SpectralModel {
  ModelKind kind = ModelKind::Torus2;
  double nu = 2.0;

  static SpectralModel torus2() { return {ModelKind::Torus2, 2.0}; }
  static SpectralModel su2() { return {ModelKind::Su2, 2.0}; }
};

/// Finite set of frequencies an analysis runs over.
class Window {
 public:
  /// All frequencies with lambda <= cutoff.
  static Window lambda(double cutoff);
  /// SU(2) frequencies with ell <= max_ell.
  static Window su2_ell(double max_ell);
  /// Torus frequencies with |xi| + |eta| <= radius.
  static Window torus_l1(int radius);

  double lambda_cutoff() const { return lambda_cutoff_; }
  /// Largest lambda whose whole eigenvalue shell lies in the window.
  double complete_lambda() const;
  std::optional<int> l1_radius() const { return l1_radius_; }
  bool contains(const FrequencyIndex& freq) const;
  std::string describe() const;

 private:
  double lambda_cutoff_ = 0.0;
  std::optional<int> l1_radius_;
};

/// Parses "X" (lambda cutoff), "ell:X" or "l1:R".
Window parse_window(const std::string& text);

double su2_lambda(int twice_ell);
int su2_dim(int twice_ell);

std::vector<FrequencyIndex> enumerate_frequencies(const SpectralModel& model, double lambda_cutoff);
std::vector<FrequencyIndex> enumerate_frequencies(const SpectralModel& model, const Window& window);

/// Builds the frequency for a label, including its global ordinal.
FrequencyIndex make_frequency(const FrequencyLabel& label);

/// <xi> = (1 + lambda)^{1/2}.
double bracket(const FrequencyIndex& freq);

/// Frequencies sharing one eigenvalue (the eigenspace E_lambda view).
struct Shell {
  double lambda = 0.0;
  std::vector<FrequencyIndex> members;
  int dim() const;
};

std::vector<Shell> group_by_shell(std::span<const FrequencyIndex> freqs);

}  // namespace ghypo

#endif  // GHYPO_SPECTRAL_MODELS_HPP

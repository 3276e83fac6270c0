#ifndef GHYPO_COEFFICIENT_FIELD_HPP
#define GHYPO_COEFFICIENT_FIELD_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <ostream>

#include "ghypo/linalg.hpp"
#include "ghypo/spectral_models.hpp"

namespace ghypo {

/// A distribution given by its Fourier coefficient vectors u^(j) in C^{d_j}.
///
/// Explicit fields have finite support keyed by the global frequency ordinal,
/// so iteration runs in nondecreasing eigenvalue order. Rule fields compute
/// coefficients on demand and are only valid up to a stated lambda cutoff.
class CoefficientField {
 public:
  using Rule = std::function<ComplexVector(const FrequencyIndex&)>;

  struct Entry {
    FrequencyIndex freq;
    ComplexVector value;
  };

  explicit CoefficientField(ModelKind model) : model_(model) {}
  static CoefficientField from_rule(ModelKind model, Rule rule, double valid_to_lambda);

  ModelKind model() const { return model_; }
  bool is_explicit() const { return !rule_; }
  double valid_to() const { return rule_ ? valid_to_ : std::numeric_limits<double>::infinity(); }

  /// Sets u^(freq); the vector length must equal freq.dim.
  void set(const FrequencyIndex& freq, ComplexVector value);
  /// u^(freq); zero outside an explicit field's support.
  ComplexVector at(const FrequencyIndex& freq) const;
  const std::map<std::int64_t, Entry>& support() const { return support_; }

 private:
  ModelKind model_;
  Rule rule_;
  double valid_to_ = 0.0;
  std::map<std::int64_t, Entry> support_;
};

/// CSV rows: ordinal,label,component_index,re,im (explicit support only).
void write_coefficients_csv(std::ostream& os, const CoefficientField& u);

}  // namespace ghypo

#endif  // GHYPO_COEFFICIENT_FIELD_HPP

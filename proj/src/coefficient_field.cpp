#include "ghypo/coefficient_field.hpp"

#include <iomanip>

#include "ghypo/error.hpp"

namespace ghypo {

CoefficientField CoefficientField::from_rule(ModelKind model, Rule rule, double valid_to_lambda) {
  CoefficientField u(model);
  u.rule_ = std::move(rule);
  u.valid_to_ = valid_to_lambda;
  return u;
}

void CoefficientField::set(const FrequencyIndex& freq, ComplexVector value) {
  if (rule_) throw Error(ErrorCode::Precondition, "coefficients", "cannot set entries of a rule field");
  if (freq.model() != model_) throw Error(ErrorCode::Precondition, "coefficients", "frequency from another model");
  if (value.size() != freq.dim)
    throw Error(ErrorCode::Precondition, "coefficients",
                "coefficient length " + std::to_string(value.size()) + " != dim " + std::to_string(freq.dim));
  support_.insert_or_assign(freq.ordinal, Entry{freq, std::move(value)});
}

ComplexVector CoefficientField::at(const FrequencyIndex& freq) const {
  if (freq.model() != model_) throw Error(ErrorCode::Precondition, "coefficients", "frequency from another model");
  if (rule_) {
    if (freq.lambda > valid_to_)
      throw Error(ErrorCode::Precondition, "coefficients", "frequency beyond the rule's validity range");
    ComplexVector v = rule_(freq);
    if (v.size() != freq.dim) throw Error(ErrorCode::Precondition, "coefficients", "rule returned the wrong length");
    return v;
  }
  const auto it = support_.find(freq.ordinal);
  if (it == support_.end()) return ComplexVector::Zero(freq.dim);
  return it->second.value;
}

void write_coefficients_csv(std::ostream& os, const CoefficientField& u) {
  os << "ordinal,label,component_index,re,im\n";
  os << std::setprecision(17);
  for (const auto& [ordinal, entry] : u.support()) {
    const std::string label = to_string(entry.freq.label);
    for (Eigen::Index k = 0; k < entry.value.size(); ++k)
      os << ordinal << ",\"" << label << "\"," << k << ',' << entry.value(k).real() << ',' << entry.value(k).imag()
         << '\n';
  }
}

}  // namespace ghypo

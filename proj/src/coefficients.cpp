#include "ghypo/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ghypo/error.hpp"

namespace ghypo {

namespace {

// (lambda, ||u^(j)||) over the window in ordinal order.
std::vector<std::pair<double, double>> norms_in_window(const CoefficientField& u, const SpectralModel& model,
                                                       const Window& window) {
  if (u.model() != model.kind) throw Error(ErrorCode::Precondition, "coefficients", "field and model disagree");
  std::vector<std::pair<double, double>> out;
  if (u.is_explicit()) {
    for (const auto& [ordinal, entry] : u.support())
      if (window.contains(entry.freq)) out.emplace_back(entry.freq.lambda, entry.value.norm());
    return out;
  }
  if (window.lambda_cutoff() > u.valid_to())
    throw Error(ErrorCode::Precondition, "coefficients", "cutoff exceeds the field's validity range");
  for (const FrequencyIndex& f : enumerate_frequencies(model, window)) out.emplace_back(f.lambda, u.at(f).norm());
  return out;
}

}  // namespace

double sobolev_norm(const CoefficientField& u, double s, const SpectralModel& model, const Window& window) {
  double sum = 0.0;
  for (const auto& [lambda, norm] : norms_in_window(u, model, window))
    sum += std::pow(1.0 + lambda, 2.0 * s / model.nu) * norm * norm;
  return std::sqrt(sum);
}

RegularityReport classify_regularity(const CoefficientField& u, const SpectralModel& model, const Window& window,
                                     int n_probe) {
  const auto freqs = enumerate_frequencies(model, window);
  if (freqs.size() < 8) throw Error(ErrorCode::Precondition, "coefficients", "window too small: fewer than 8 frequencies");

  std::vector<std::pair<double, double>> pts;  // (log(1 + lambda), ||u||)
  pts.reserve(freqs.size());
  for (const FrequencyIndex& f : freqs) pts.emplace_back(std::log1p(f.lambda), u.at(f).norm());

  RegularityReport report;
  report.window = window.describe();

  {
    double n = 0, mx = 0, my = 0;
    for (const auto& [x, v] : pts)
      if (v > 0) n += 1, mx += x, my += std::log(v);
    report.decay_slope = std::numeric_limits<double>::quiet_NaN();
    if (n >= 2) {
      mx /= n;
      my /= n;
      double sxy = 0, sxx = 0;
      for (const auto& [x, v] : pts)
        if (v > 0) sxy += (x - mx) * (std::log(v) - my), sxx += (x - mx) * (x - mx);
      if (sxx > 0) report.decay_slope = sxy / sxx;
    }
  }

  const double split = 0.5 * pts.back().first;
  if (split <= 0.0 || pts.front().first >= split) {
    report.kind = Indeterminate{"window has no spread in lambda"};
    return report;
  }
  // Log-domain comparison; zero coefficients contribute -inf.
  auto validates = [&](int N) {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = lower;
    for (const auto& [x, v] : pts) {
      if (v == 0.0) continue;
      const double g = std::log(v) - N * x;
      double& side = x <= split ? lower : upper;
      side = std::max(side, g);
    }
    if (!std::isfinite(upper)) return true;
    return upper <= lower + 1e-9;
  };

  if (validates(-n_probe)) {
    report.kind = SmoothEvidence{n_probe};
    return report;
  }
  for (int N = -n_probe + 1; N <= kMaxDistributionOrder; ++N) {
    if (validates(N)) {
      report.kind = DistributionOrder{N};
      return report;
    }
  }
  report.kind = Indeterminate{"no polynomial bound up to order " + std::to_string(kMaxDistributionOrder)};
  return report;
}

Counterexample build_counterexample(const MatrixSymbol& symbol, const SpectralModel& model, int K,
                                    const Window& window) {
  if (K < 1) throw Error(ErrorCode::Precondition, "coefficients", "K must be at least 1");
  const auto freqs = enumerate_frequencies(model, window);
  Counterexample out{CoefficientField(model.kind), {}, {}};
  double last_lambda = 0.0;
  std::size_t pos = 0;
  for (int k = 1; k <= K; ++k) {
    bool found = false;
    for (; pos < freqs.size(); ++pos) {
      const FrequencyIndex& f = freqs[pos];
      if (f.lambda <= last_lambda) continue;
      const double bound = std::pow(1.0 + f.lambda, -static_cast<double>(k));
      const SymbolBlock b = symbol.block(f);
      if (!(b.gain() < bound)) continue;
      const ComplexVector a = b.minimizing_vector();
      const double residual = b.apply(a).norm();
      const bool exact_zero = residual == 0.0;
      // Guard band for rounding in the residual.
      if (!exact_zero && !(residual < bound * (1.0 - 1e-12))) continue;
      out.f.set(f, a);
      out.frequencies.push_back(f);
      out.certificates.push_back({k, f, residual, bound, exact_zero});
      last_lambda = f.lambda;
      ++pos;
      found = true;
      break;
    }
    if (!found)
      throw Error(ErrorCode::SearchExhausted, "coefficients",
                  "no admissible frequency for k = " + std::to_string(k) + " within " + window.describe());
  }
  return out;
}

}  // namespace ghypo

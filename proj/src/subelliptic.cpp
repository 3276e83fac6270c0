#include "ghypo/subelliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ghypo/coefficients.hpp"
#include "ghypo/error.hpp"

namespace ghypo {

ComplexMatrix TruncatedKernel::basis_at(const FrequencyIndex& freq) const {
  const auto it = std::lower_bound(per_frequency.begin(), per_frequency.end(), freq.ordinal,
                                   [](const KernelBlock& b, std::int64_t o) { return b.freq.ordinal < o; });
  if (it == per_frequency.end() || it->freq.ordinal != freq.ordinal) return ComplexMatrix(freq.block_dim(), 0);
  return it->basis;
}

TruncatedKernel kernel_on_truncation(const MatrixSymbol& symbol, const SpectralModel& model, const Window& window,
                                     double tol) {
  TruncatedKernel out;
  out.window = window.describe();
  const auto freqs = enumerate_frequencies(model, window);
  double xmax = 0.0;
  for (const FrequencyIndex& f : freqs) xmax = std::max(xmax, std::log1p(f.lambda));
  for (const FrequencyIndex& f : freqs) {
    const SymbolBlock b = symbol.block(f);
    ComplexMatrix basis = b.null_basis(tol);
    if (basis.cols() == 0) continue;
    out.per_frequency.push_back({f, std::move(basis)});
    out.total_dim += out.per_frequency.back().dim();
    if (xmax > 0 && std::log1p(f.lambda) >= 0.5 * xmax) out.reaches_boundary = true;
  }
  return out;
}

double per_frequency_constant(const MatrixSymbol& symbol, const FrequencyIndex& freq, double tol) {
  return symbol.block(freq).smallest_nonzero_singular_value(tol);
}

SubellipticReport best_alpha_constant(const MatrixSymbol& symbol, const SpectralModel& model, double s, double m,
                                      const Window& window, double tol) {
  SubellipticReport rep;
  rep.s = s;
  rep.m = m;
  rep.window = window.describe();
  rep.kernel = kernel_on_truncation(symbol, model, window, tol);
  for (const KernelBlock& kb : rep.kernel.per_frequency)
    rep.K1 = std::max(rep.K1, std::pow(1.0 + kb.freq.lambda, m / model.nu));

  double best = std::numeric_limits<double>::infinity();
  for (const FrequencyIndex& f : enumerate_frequencies(model, window)) {
    const SymbolBlock b = symbol.block(f);
    const double c_j = b.smallest_nonzero_singular_value(tol);
    if (!std::isfinite(c_j)) continue;
    // ||P a||_s / ||a||_{s+m} for the singular vector of c_j.
    const double ratio = std::pow(1.0 + f.lambda, s / model.nu) * c_j / std::pow(1.0 + f.lambda, (s + m) / model.nu);
    if (ratio < best) {
      best = ratio;
      rep.witness_freq = f;
    }
  }
  if (!std::isfinite(best))
    throw Error(ErrorCode::Precondition, "subelliptic", "every block in " + window.describe() + " is all kernel");
  rep.C_star = best;
  rep.K_star = std::max(rep.K1, 1.0 / best);

  const SymbolBlock b = symbol.block(rep.witness_freq);
  const auto [sv, v] = b.right_singular_pairs();
  const double threshold = tol * std::max(1.0, sv(0));
  Eigen::Index col = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > threshold) col = k;
  ComplexVector a = v.col(col);
  normalize_phase(a);
  rep.witness_vector = ComplexVector::Zero(rep.witness_freq.dim);
  rep.witness_vector.head(a.size()) = a;
  return rep;
}

CoefficientField witness_field(const SubellipticReport& report, ModelKind model) {
  CoefficientField f(model);
  f.set(report.witness_freq, report.witness_vector);
  return f;
}

CoefficientField project_off_kernel(const CoefficientField& f, const TruncatedKernel& kernel) {
  if (!f.is_explicit()) throw Error(ErrorCode::Precondition, "subelliptic", "kernel projection needs an explicit field");
  CoefficientField out(f.model());
  for (const auto& [ordinal, entry] : f.support()) {
    const ComplexMatrix basis = kernel.basis_at(entry.freq);
    ComplexVector v = entry.value;
    if (basis.cols() > 0) {
      const Eigen::Index n = basis.rows();
      for (int r = 0; r < entry.freq.replicas(); ++r) {
        auto seg = v.segment(r * n, n);
        seg -= basis * (basis.adjoint() * seg);
      }
    }
    out.set(entry.freq, std::move(v));
  }
  return out;
}

namespace {

InequalityCheck alpha_with_kernel(const MatrixSymbol& symbol, const SpectralModel& model, const CoefficientField& f,
                                  double s, double m, double C, const Window& window, const TruncatedKernel& kernel) {
  InequalityCheck out;
  const CoefficientField g = project_off_kernel(f, kernel);
  CoefficientField removed(f.model());
  for (const auto& [ordinal, entry] : f.support()) removed.set(entry.freq, entry.value - g.at(entry.freq));
  out.removed_norm = sobolev_norm(removed, s, model, window);

  const double lhs = sobolev_norm(apply_symbol(symbol, g, window), s, model, window);
  const double rhs = sobolev_norm(g, s + m, model, window);
  const double scale = sobolev_norm(f, s + m, model, window);
  if (rhs <= 1e-13 * scale || rhs == 0.0) {
    out.vacuous = true;
    out.pass = true;
    out.ratio = std::numeric_limits<double>::infinity();
    return out;
  }
  out.ratio = lhs / rhs;
  out.pass = lhs >= C * rhs * (1.0 - 1e-12);
  return out;
}

}  // namespace

InequalityCheck check_alpha(const MatrixSymbol& symbol, const SpectralModel& model, const CoefficientField& f,
                            double s, double m, double C, const Window& window, double tol) {
  return alpha_with_kernel(symbol, model, f, s, m, C, window, kernel_on_truncation(symbol, model, window, tol));
}

InequalityCheck check_beta(const MatrixSymbol& symbol, const SpectralModel& model, const CoefficientField& f,
                           double s, double m, double K, const Window& window) {
  InequalityCheck out;
  const double lhs = sobolev_norm(f, s + m, model, window);
  const double rhs = sobolev_norm(f, s, model, window) + sobolev_norm(apply_symbol(symbol, f, window), s, model, window);
  if (rhs == 0.0) {
    out.vacuous = true;
    out.pass = lhs == 0.0;
    out.ratio = lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return out;
  }
  out.ratio = lhs / rhs;
  out.pass = lhs <= K * rhs * (1.0 + 1e-12);
  return out;
}

CoefficientField random_field(const SpectralModel& model, const Window& window, int n_freq, std::mt19937_64& rng) {
  const auto freqs = enumerate_frequencies(model, window);
  if (freqs.empty()) throw Error(ErrorCode::Precondition, "subelliptic", "empty window");
  std::vector<std::size_t> idx(freqs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  const std::size_t take = std::min<std::size_t>(idx.size(), static_cast<std::size_t>(std::max(n_freq, 1)));
  for (std::size_t i = 0; i < take; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  std::normal_distribution<double> gauss;
  CoefficientField f(model.kind);
  for (std::size_t i = 0; i < take; ++i) {
    const FrequencyIndex& fr = freqs[idx[i]];
    ComplexVector v(fr.dim);
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Complex(gauss(rng), gauss(rng));
    f.set(fr, std::move(v));
  }
  return f;
}

ProbeSummary run_probes(const MatrixSymbol& symbol, const SpectralModel& model, const SubellipticReport& report,
                        const Window& window, int probes, std::uint64_t seed, int n_freq) {
  ProbeSummary out;
  out.probes = probes;
  out.seed = seed;
  out.min_alpha_ratio = std::numeric_limits<double>::infinity();

  // One pass per probe: every norm is a per-frequency sum and the kernel is frequency-local.
  std::map<std::int64_t, SymbolBlock> blocks;
  std::mt19937_64 rng(seed);
  for (int p = 0; p < probes; ++p) {
    const CoefficientField f = random_field(model, window, n_freq, rng);
    double pf_perp = 0, f_perp_sm = 0, f_sm = 0, pf_full = 0, f_s = 0, scale = 0;
    for (const auto& [ordinal, entry] : f.support()) {
      auto it = blocks.find(ordinal);
      if (it == blocks.end()) it = blocks.emplace(ordinal, symbol.block(entry.freq)).first;
      const SymbolBlock& b = it->second;
      const double ws = std::pow(1.0 + entry.freq.lambda, 2.0 * report.s / model.nu);
      const double wsm = std::pow(1.0 + entry.freq.lambda, 2.0 * (report.s + report.m) / model.nu);
      const ComplexMatrix basis = report.kernel.basis_at(entry.freq);
      ComplexVector perp = entry.value;
      if (basis.cols() > 0) {
        const Eigen::Index n = basis.rows();
        for (int r = 0; r < entry.freq.replicas(); ++r) {
          auto seg = perp.segment(r * n, n);
          seg -= basis * (basis.adjoint() * seg);
        }
      }
      const double fn = entry.value.squaredNorm();
      pf_perp += ws * b.apply(perp).squaredNorm();
      pf_full += ws * b.apply(entry.value).squaredNorm();
      f_perp_sm += wsm * perp.squaredNorm();
      f_sm += wsm * fn;
      f_s += ws * fn;
      scale += wsm * fn;
    }
    if (f_perp_sm <= 1e-26 * scale) {
      ++out.vacuous;
    } else {
      const double ratio = std::sqrt(pf_perp / f_perp_sm);
      out.min_alpha_ratio = std::min(out.min_alpha_ratio, ratio);
      if (!(ratio >= report.C_star * (1.0 - 1e-12))) ++out.alpha_failures;
    }
    const double beta = std::sqrt(f_sm) / (std::sqrt(f_s) + std::sqrt(pf_full));
    out.max_beta_ratio = std::max(out.max_beta_ratio, beta);
    if (!(beta <= report.K_star * (1.0 + 1e-12))) ++out.beta_failures;
  }
  return out;
}

}  // namespace ghypo

#include "ghypo/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ghypo/error.hpp"

namespace ghypo {

namespace {

Error symbol_error(const std::string& message) { return Error(ErrorCode::Precondition, "symbols", message); }

Complex ipow(Complex base, int n) {
  Complex out{1.0, 0.0};
  for (int k = 0; k < n; ++k) out *= base;
  return out;
}

// Sorted decreasing moduli of a diagonal block.
Vector<double> diagonal_singular_values(const ComplexMatrix& d) {
  Vector<double> s = d.col(0).cwiseAbs();
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  return s;
}

}  // namespace

// --- SymbolBlock ---------------------------------------------------------------

SymbolBlock SymbolBlock::dense(ComplexMatrix block, int replicas) {
  if (block.rows() != block.cols()) throw symbol_error("symbol block must be square");
  return {std::move(block), false, replicas};
}

SymbolBlock SymbolBlock::diag(ComplexVector entries, int replicas) {
  return {ComplexMatrix(std::move(entries)), true, replicas};
}

ComplexMatrix SymbolBlock::dense_block() const {
  if (!diagonal) return values;
  return values.col(0).asDiagonal();
}

ComplexMatrix SymbolBlock::expand() const {
  const Eigen::Index n = block_size();
  ComplexMatrix full = ComplexMatrix::Zero(full_size(), full_size());
  const ComplexMatrix b = dense_block();
  for (int r = 0; r < replicas; ++r) full.block(r * n, r * n, n, n) = b;
  return full;
}

Vector<double> SymbolBlock::singular_values() const {
  if (diagonal) return diagonal_singular_values(values);
  return ghypo::singular_values(values);
}

double SymbolBlock::gain() const {
  if (block_size() == 0) return 0.0;
  if (diagonal) return values.col(0).cwiseAbs().minCoeff();
  return smallest_gain(values);
}

double SymbolBlock::opnorm() const {
  if (block_size() == 0) return 0.0;
  if (diagonal) return values.col(0).cwiseAbs().maxCoeff();
  return operator_norm(values);
}

bool SymbolBlock::is_singular(double tol) const { return gain() <= tol * std::max(1.0, opnorm()); }

double SymbolBlock::smallest_nonzero_singular_value(double tol) const {
  const Vector<double> s = singular_values();
  if (s.size() == 0) return std::numeric_limits<double>::infinity();
  const double threshold = tol * std::max(1.0, s(0));
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > threshold) best = std::min(best, s(i));
  return best;
}

ComplexVector SymbolBlock::apply(const ComplexVector& u) const {
  if (u.size() != full_size()) throw symbol_error("coefficient vector length does not match the symbol");
  const Eigen::Index n = block_size();
  ComplexVector out(u.size());
  for (int r = 0; r < replicas; ++r) {
    if (diagonal)
      out.segment(r * n, n) = values.col(0).cwiseProduct(u.segment(r * n, n));
    else
      out.segment(r * n, n) = values * u.segment(r * n, n);
  }
  return out;
}

std::pair<Vector<double>, ComplexMatrix> SymbolBlock::right_singular_pairs() const {
  const Eigen::Index n = block_size();
  if (diagonal) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    // Stable: equal moduli keep coordinate order, so the last column is the first minimizer.
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return std::abs(values(a, 0)) > std::abs(values(b, 0));
    });
    Vector<double> s(n);
    ComplexMatrix v = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      s(k) = std::abs(values(order[k], 0));
      v(order[k], k) = 1.0;
    }
    // Put the first minimizing coordinate last.
    if (n > 1) {
      const double smin = s(n - 1);
      Eigen::Index first = n - 1;
      while (first > 0 && s(first - 1) == smin) --first;
      if (first != n - 1) {
        const ComplexVector keep = v.col(first);
        for (Eigen::Index k = first; k + 1 < n; ++k) v.col(k) = v.col(k + 1);
        v.col(n - 1) = keep;
      }
    }
    return {s, v};
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(values, Eigen::ComputeFullV);
  return {svd.singularValues(), svd.matrixV()};
}

ComplexVector SymbolBlock::minimizing_vector() const {
  const auto [s, v] = right_singular_pairs();
  ComplexVector out = ComplexVector::Zero(full_size());
  if (block_size() == 0) return out;
  ComplexVector a = v.col(block_size() - 1);
  normalize_phase(a);
  out.head(block_size()) = a;
  return out;
}

ComplexMatrix SymbolBlock::null_basis(double tol) const {
  const Eigen::Index n = block_size();
  if (n == 0) return ComplexMatrix(0, 0);
  if (diagonal) {
    const double threshold = tol * std::max(1.0, opnorm());
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::abs(values(i, 0)) <= threshold) idx.push_back(i);
    ComplexMatrix basis = ComplexMatrix::Zero(n, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) basis(idx[k], static_cast<Eigen::Index>(k)) = 1.0;
    return basis;
  }
  const auto [s, v] = right_singular_pairs();
  const double threshold = tol * std::max(1.0, s(0));
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < n; ++k)
    if (s(k) <= threshold) cols.push_back(k);
  ComplexMatrix basis(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    ComplexVector col = v.col(cols[k]);
    normalize_phase(col);
    basis.col(static_cast<Eigen::Index>(k)) = col;
  }
  return basis;
}

// --- MatrixSymbol -------------------------------------------------------------

MatrixSymbol::MatrixSymbol(ModelKind model, Structure structure, Evaluator evaluator, double nu)
    : model_(model), structure_(structure), evaluator_(std::move(evaluator)), nu_(nu) {}

MatrixSymbol MatrixSymbol::identity(ModelKind model) {
  return MatrixSymbol(model, Structure::Diagonal, [](const FrequencyIndex& f) {
    return SymbolBlock::diag(ComplexVector::Ones(f.block_dim()), f.replicas());
  });
}

SymbolBlock MatrixSymbol::block(const FrequencyIndex& freq) const {
  if (freq.model() != model_) throw symbol_error("frequency belongs to a different model");
  SymbolBlock b = evaluator_(freq);
  if (b.full_size() != freq.dim) throw symbol_error("symbol shape does not match the frequency dimension");
  return b;
}

namespace {

enum class BinaryOp { Add, Compose };

SymbolBlock combine_blocks(const SymbolBlock& a, const SymbolBlock& b, BinaryOp op) {
  if (a.full_size() != b.full_size()) throw Error(ErrorCode::Precondition, "symbols", "shape mismatch");
  if (a.replicas == b.replicas && a.block_size() == b.block_size()) {
    if (a.diagonal && b.diagonal) {
      ComplexVector d = op == BinaryOp::Add ? ComplexVector(a.values.col(0) + b.values.col(0))
                                            : ComplexVector(a.values.col(0).cwiseProduct(b.values.col(0)));
      return SymbolBlock::diag(std::move(d), a.replicas);
    }
    const ComplexMatrix x = a.dense_block();
    const ComplexMatrix y = b.dense_block();
    return SymbolBlock::dense(op == BinaryOp::Add ? ComplexMatrix(x + y) : ComplexMatrix(x * y), a.replicas);
  }
  const ComplexMatrix x = a.expand();
  const ComplexMatrix y = b.expand();
  return SymbolBlock::dense(op == BinaryOp::Add ? ComplexMatrix(x + y) : ComplexMatrix(x * y), 1);
}

Structure combined_structure(Structure a, Structure b) {
  if (a == b) return a;
  if (a == Structure::Dense || b == Structure::Dense) return Structure::Dense;
  return Structure::Su2Block;
}

MatrixSymbol binary(const MatrixSymbol& a, const MatrixSymbol& b, BinaryOp op) {
  if (a.model() != b.model()) throw symbol_error("cannot combine symbols of different models");
  return MatrixSymbol(
      a.model(), combined_structure(a.structure(), b.structure()),
      [a, b, op](const FrequencyIndex& f) { return combine_blocks(a.block(f), b.block(f), op); }, a.nu());
}

}  // namespace

MatrixSymbol operator+(const MatrixSymbol& a, const MatrixSymbol& b) { return binary(a, b, BinaryOp::Add); }

MatrixSymbol operator*(const MatrixSymbol& a, const MatrixSymbol& b) { return binary(a, b, BinaryOp::Compose); }

MatrixSymbol operator*(Complex c, const MatrixSymbol& a) {
  return MatrixSymbol(
      a.model(), a.structure(),
      [a, c](const FrequencyIndex& f) {
        SymbolBlock blk = a.block(f);
        blk.values *= c;
        return blk;
      },
      a.nu());
}

CoefficientField apply_symbol(const MatrixSymbol& symbol, const CoefficientField& u, const Window& window) {
  if (u.model() != symbol.model()) throw symbol_error("field and symbol belong to different models");
  CoefficientField out(u.model());
  if (u.is_explicit()) {
    for (const auto& [ordinal, entry] : u.support()) {
      if (!window.contains(entry.freq)) continue;
      out.set(entry.freq, symbol.block(entry.freq).apply(entry.value));
    }
    return out;
  }
  if (window.lambda_cutoff() > u.valid_to())
    throw Error(ErrorCode::Precondition, "symbols", "cutoff exceeds the field's validity range");
  for (const FrequencyIndex& f : enumerate_frequencies(SpectralModel{u.model(), symbol.nu()}, window))
    out.set(f, symbol.block(f).apply(u.at(f)));
  return out;
}

std::vector<GainSample> gain_samples(const MatrixSymbol& symbol, const SpectralModel& model, const Window& window) {
  if (model.kind != symbol.model()) throw symbol_error("symbol and model disagree");
  std::vector<GainSample> out;
  for (const FrequencyIndex& f : enumerate_frequencies(model, window)) {
    const SymbolBlock b = symbol.block(f);
    out.push_back({f, b.gain(), b.opnorm()});
  }
  return out;
}

OrderEstimate estimate_order(std::span<const GainSample> samples, double nu, double lambda_max) {
  std::vector<std::pair<double, double>> pts;  // (log b, log norm)
  double max_norm = 0.0;
  std::size_t positive = 0;
  for (const GainSample& s : samples) {
    if (s.freq.lambda > lambda_max) continue;
    max_norm = std::max(max_norm, s.opnorm);
    if (s.freq.lambda <= 0) continue;
    ++positive;
    if (s.opnorm > 0) pts.emplace_back(std::log1p(s.freq.lambda) / nu, std::log(s.opnorm));
  }
  if (positive < 8) throw symbol_error("order estimation needs at least 8 frequencies with lambda > 0");
  if (max_norm == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
  if (pts.size() < 2) throw symbol_error("too few nonzero symbol values to estimate the order");

  const auto [lo_it, hi_it] = std::minmax_element(pts.begin(), pts.end());
  const double lo = lo_it->first, hi = hi_it->first;
  double order = 0.0;
  if (hi > lo) {
    // Upper envelope: maxima over log-spaced bins in the top half of the range.
    constexpr int kBins = 24;
    const double start = 0.5 * (lo + hi);
    std::vector<double> bx(kBins, 0.0), by(kBins, -std::numeric_limits<double>::infinity());
    for (const auto& [x, y] : pts) {
      if (x < start) continue;
      int k = static_cast<int>((x - start) / (hi - start) * kBins);
      k = std::clamp(k, 0, kBins - 1);
      if (y > by[k]) {
        by[k] = y;
        bx[k] = x;
      }
    }
    std::vector<std::pair<double, double>> env;
    for (int k = 0; k < kBins; ++k)
      if (std::isfinite(by[k])) env.emplace_back(bx[k], by[k]);
    if (env.size() >= 2) {
      double mx = 0, my = 0;
      for (const auto& [x, y] : env) mx += x, my += y;
      mx /= static_cast<double>(env.size());
      my /= static_cast<double>(env.size());
      double sxy = 0, sxx = 0;
      for (const auto& [x, y] : env) sxy += (x - mx) * (y - my), sxx += (x - mx) * (x - mx);
      if (sxx > 0) order = sxy / sxx;
    }
  }
  double c_hat = 0.0;
  for (const GainSample& s : samples)
    if (s.freq.lambda <= lambda_max)
      c_hat = std::max(c_hat, s.opnorm * std::exp(-order * std::log1p(s.freq.lambda) / nu));
  return {order, c_hat};
}

OrderEstimate estimate_order(const MatrixSymbol& symbol, const SpectralModel& model, const Window& window) {
  const auto samples = gain_samples(symbol, model, window);
  return estimate_order(samples, model.nu, window.complete_lambda());
}

// --- operator descriptions ------------------------------------------------------

namespace {

std::optional<RealSpec> exact_part(double x) {
  if (!std::isfinite(x) || std::abs(x) >= std::ldexp(1.0, 40)) return std::nullopt;
  const double scaled = std::ldexp(x, 10);
  if (scaled != std::floor(scaled)) return std::nullopt;
  return RealSpec::rational(rational_from_double(x));
}

}  // namespace

Coefficient Coefficient::from_double(Complex v) { return {v, exact_part(v.real()), exact_part(v.imag())}; }

Coefficient Coefficient::from_exact(RealSpec re, RealSpec im) {
  const Complex v{re.to_double(), im.to_double()};
  return {v, std::move(re), std::move(im)};
}

ModelKind OperatorSpec::model() const {
  if (std::holds_alternative<TorusPoly>(kind)) return ModelKind::Torus2;
  if (std::holds_alternative<Su2DiagPoly>(kind)) return ModelKind::Su2;
  return std::get<MatrixTable>(kind).model;
}

SymbolBlock eval_block(const OperatorSpec& spec, const FrequencyIndex& freq) {
  if (freq.model() != spec.model()) throw symbol_error("operator and frequency belong to different models");
  if (const auto* poly = std::get_if<TorusPoly>(&spec.kind)) {
    const auto& l = std::get<Torus2Label>(freq.label);
    Complex value{0.0, 0.0};
    for (const TorusTerm& t : poly->terms)
      value += t.coeff.value * ipow(Complex(0.0, l.xi), t.deg_t) * ipow(Complex(0.0, l.eta), t.deg_x);
    return SymbolBlock::diag(ComplexVector::Constant(1, value), 1);
  }
  if (const auto* poly = std::get_if<Su2DiagPoly>(&spec.kind)) {
    const int tl = std::get<Su2Label>(freq.label).twice_ell;
    const double casimir = su2_lambda(tl);
    ComplexVector d(tl + 1);
    for (int k = 0; k <= tl; ++k) {
      const double m = 0.5 * (2 * k - tl);
      Complex value{0.0, 0.0};
      for (const Su2Term& t : poly->terms)
        value += t.coeff.value * ipow(Complex(0.0, m), t.deg_d0) * std::pow(casimir, t.deg_neglap);
      d(k) = value;
    }
    return SymbolBlock::diag(std::move(d), tl + 1);
  }
  const auto& table = std::get<MatrixTable>(spec.kind);
  const auto it = table.entries.find(freq.label);
  if (it == table.entries.end())
    throw Error(ErrorCode::Precondition, "symbols", "matrix table has no entry for " + to_string(freq.label));
  const ComplexMatrix& m = it->second;
  if (m.rows() == freq.dim) return SymbolBlock::dense(m, 1);
  if (m.rows() == freq.block_dim()) return SymbolBlock::dense(m, freq.replicas());
  throw symbol_error("matrix table entry for " + to_string(freq.label) + " has the wrong size");
}

ComplexMatrix eval_symbol(const OperatorSpec& spec, const FrequencyIndex& freq) {
  return eval_block(spec, freq).expand();
}

MatrixSymbol make_symbol(const OperatorSpec& spec, const SpectralModel& model) {
  if (model.kind != spec.model()) throw symbol_error("operator does not match the model");
  Structure structure = Structure::Dense;
  if (std::holds_alternative<TorusPoly>(spec.kind))
    structure = Structure::Diagonal;
  else if (std::holds_alternative<Su2DiagPoly>(spec.kind))
    structure = Structure::Su2Block;
  return MatrixSymbol(
      model.kind, structure, [spec](const FrequencyIndex& f) { return eval_block(spec, f); }, model.nu);
}

}  // namespace ghypo

#include "ghypo/hypo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ghypo/diophantine.hpp"
#include "ghypo/error.hpp"

namespace ghypo {

std::vector<FrequencyIndex> singular_scan(std::span<const GainSample> samples, double tol) {
  std::vector<FrequencyIndex> out;
  for (const GainSample& s : samples)
    if (s.gain <= tol * std::max(1.0, s.opnorm)) out.push_back(s.freq);
  return out;
}

std::vector<FrequencyIndex> singular_scan(const MatrixSymbol& symbol, const SpectralModel& model,
                                          const Window& window, double tol) {
  const auto samples = gain_samples(symbol, model, window);
  return singular_scan(samples, tol);
}

GrowthFit fit_growth(std::span<const GainSample> samples, double nu, double tol) {
  std::size_t start = 0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (samples[i].gain <= tol * std::max(1.0, samples[i].opnorm)) start = i + 1;
  const auto tail = samples.subspan(start);
  if (tail.size() < 8) throw NoFit("fewer than 8 nonsingular samples past the last singular frequency");

  std::vector<double> x(tail.size()), y(tail.size());
  for (std::size_t i = 0; i < tail.size(); ++i) {
    x[i] = std::log1p(tail[i].freq.lambda) / nu;
    y[i] = std::log(tail[i].gain);
  }
  const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  const double window_lo = 0.5 * (*xmin + *xmax);
  const double split = 0.5 * (window_lo + *xmax);
  std::vector<std::size_t> lower, upper;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < window_lo) continue;
    (x[i] < split ? lower : upper).push_back(i);
  }
  if (lower.empty() || upper.empty()) throw NoFit("sample window has no spread in lambda");

  auto min_over = [&](const std::vector<std::size_t>& idx, double m) {
    double v = std::numeric_limits<double>::infinity();
    for (std::size_t i : idx) v = std::min(v, y[i] - m * x[i]);
    return v;
  };
  // Strictly decreasing in m since every upper x exceeds every lower x.
  auto balance = [&](double m) { return min_over(upper, m) - min_over(lower, m); };
  double lo = -1.0, hi = 1.0;
  while (balance(lo) < 0 && lo > -1e6) lo *= 2;
  while (balance(hi) > 0 && hi < 1e6) hi *= 2;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (balance(mid) > 0 ? lo : hi) = mid;
  }
  const double m = 0.5 * (lo + hi);

  double L = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tail.size(); ++i) L = std::min(L, std::exp(y[i] - m * x[i]));
  L *= 1.0 - 1e-14;
  double residual = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tail.size(); ++i) {
    const double g = tail[i].gain;
    residual = std::max(residual, (L * std::exp(m * x[i]) - g) / g);
  }
  return {L, m, tail.front().freq.ordinal, residual, tail.size()};
}

std::string to_string(CertificateFamily family) {
  switch (family) {
    case CertificateFamily::RationalResonance: return "RationalResonance";
    case CertificateFamily::ImaginaryHalfInteger: return "ImaginaryHalfInteger";
    case CertificateFamily::PellFamily: return "PellFamily";
  }
  return "?";
}

namespace {

struct ExactComplex {
  QuadraticSurd re;
  QuadraticSurd im;

  bool is_zero() const { return re.sign() == 0 && im.sign() == 0; }
};

std::optional<ExactComplex> exact(const Coefficient& c) {
  if (!c.is_exact() || !c.exact_re->is_exact() || !c.exact_im->is_exact()) return std::nullopt;
  return ExactComplex{c.exact_re->exact(), c.exact_im->exact()};
}

ExactComplex add(const ExactComplex& a, const ExactComplex& b) { return {a.re + b.re, a.im + b.im}; }

// Sums exact coefficients per key; nullopt when a coefficient is inexact.
template <typename Term, typename Key>
std::optional<std::map<std::pair<int, int>, ExactComplex>> collect(const std::vector<Term>& terms, Key key) {
  std::map<std::pair<int, int>, ExactComplex> out;
  for (const Term& t : terms) {
    const auto c = exact(t.coeff);
    if (!c) return std::nullopt;
    auto [it, fresh] = out.try_emplace(key(t), *c);
    if (!fresh) it->second = add(it->second, *c);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::optional<Certificate> certify_torus(const TorusPoly& poly) {
  const auto coeffs = collect(poly.terms, [](const TorusTerm& t) { return std::pair{t.deg_t, t.deg_x}; });
  if (!coeffs || coeffs->empty()) return std::nullopt;
  for (const auto& [deg, c] : *coeffs)
    if (deg.first + deg.second != 1) return std::nullopt;
  const ExactComplex zero{QuadraticSurd(), QuadraticSurd()};
  const auto a_it = coeffs->find({1, 0});
  const auto b_it = coeffs->find({0, 1});
  const ExactComplex a = a_it == coeffs->end() ? zero : a_it->second;
  const ExactComplex b = b_it == coeffs->end() ? zero : b_it->second;

  Certificate cert{CertificateFamily::RationalResonance, "", {}};
  if (a.is_zero()) {
    // Symbol i b eta vanishes on eta = 0.
    for (int k = 1; k <= 3; ++k) cert.witnesses.push_back(make_frequency(Torus2Label{k, 0}));
    cert.description = "symbol depends on eta only: zero at (k, 0) for every integer k";
    return cert;
  }
  // c = b / a must be real and rational: Im(b conj a) = 0.
  const QuadraticSurd cross = b.im * a.re - b.re * a.im;
  if (cross.sign() != 0) return std::nullopt;
  const QuadraticSurd c = (b.re * a.re + b.im * a.im) / (a.re * a.re + a.im * a.im);
  if (!c.is_rational()) return std::nullopt;
  const Rational& r = c.rational_part();
  const Integer p = boost::multiprecision::numerator(r);
  const Integer q = boost::multiprecision::denominator(r);
  if (boost::multiprecision::abs(p) > 1000000 || q > 1000000) return std::nullopt;
  const int pi = p.convert_to<int>();
  const int qi = q.convert_to<int>();
  for (int k = 1; k <= 3; ++k) cert.witnesses.push_back(make_frequency(Torus2Label{-pi * k, qi * k}));
  cert.description = "xi + c eta = 0 with c = " + to_string(r) + " at (xi, eta) = (" + std::to_string(-pi) + "k, " +
                     std::to_string(qi) + "k) for every integer k";
  return cert;
}

std::optional<Certificate> certify_su2(const Su2DiagPoly& poly) {
  const auto coeffs = collect(poly.terms, [](const Su2Term& t) { return std::pair{t.deg_d0, t.deg_neglap}; });
  if (!coeffs) return std::nullopt;
  const ExactComplex zero{QuadraticSurd(), QuadraticSurd()};
  auto coeff = [&](int d0, int neglap) {
    const auto it = coeffs->find({d0, neglap});
    return it == coeffs->end() ? zero : it->second;
  };
  bool linear = true;
  bool pell = true;
  for (const auto& [deg, c] : *coeffs) {
    if (deg != std::pair{1, 0} && deg != std::pair{0, 0}) linear = false;
    if (deg != std::pair{2, 0} && deg != std::pair{0, 1}) pell = false;
  }

  if (linear) {
    const ExactComplex a = coeff(1, 0);
    const ExactComplex q = coeff(0, 0);
    Certificate cert{CertificateFamily::ImaginaryHalfInteger, "", {}};
    if (a.is_zero()) {
      if (!q.is_zero()) return std::nullopt;
      for (int tl = 0; tl < 3; ++tl) cert.witnesses.push_back(make_frequency(Su2Label{tl}));
      cert.description = "zero operator";
      return cert;
    }
    // a i m + q = 0  <=>  m = i q / a.
    const QuadraticSurd norm = a.re * a.re + a.im * a.im;
    const QuadraticSurd m_re = (q.re * a.im - q.im * a.re) / norm;
    const QuadraticSurd m_im = (q.re * a.re + q.im * a.im) / norm;
    if (m_im.sign() != 0 || !m_re.is_rational()) return std::nullopt;
    const Rational twice_m = m_re.rational_part() * 2;
    if (boost::multiprecision::denominator(twice_m) != 1) return std::nullopt;
    const Integer tm = boost::multiprecision::abs(boost::multiprecision::numerator(twice_m));
    if (tm > 100000) return std::nullopt;
    const int t = tm.convert_to<int>();
    for (int k = 0; k < 3; ++k) cert.witnesses.push_back(make_frequency(Su2Label{t + 2 * k}));
    cert.description = "i m a + q = 0 at m = " + to_string(m_re.rational_part()) +
                       ", which occurs in every representation with ell >= |m| and ell - m integral";
    return cert;
  }

  if (pell) {
    // a ell(ell + 1) - b m^2 with b = 2a.
    const ExactComplex a = coeff(0, 1);
    const ExactComplex b = coeff(2, 0);
    if (a.is_zero() || a.im.sign() != 0 || b.im.sign() != 0) return std::nullopt;
    if (!(b.re == a.re * QuadraticSurd(Rational(2)))) return std::nullopt;
    Certificate cert{CertificateFamily::PellFamily, "", {}};
    for (const Integer& ell : pell_levels(3)) cert.witnesses.push_back(make_frequency(Su2Label{2 * ell.convert_to<int>()}));
    cert.description =
        "ell(ell + 1) = 2 m^2 at ell = (u - 1) / 2 for every solution of u^2 - 8 m^2 = 1, "
        "u_{k+1} = 3 u_k + 8 m_k, m_{k+1} = u_k + 3 m_k";
    return cert;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Certificate> certify(const OperatorSpec& spec) {
  std::optional<Certificate> cert;
  try {
    if (const auto* t = std::get_if<TorusPoly>(&spec.kind)) cert = certify_torus(*t);
    if (const auto* s = std::get_if<Su2DiagPoly>(&spec.kind)) cert = certify_su2(*s);
  } catch (const Error&) {
    // Coefficients from different quadratic fields: not a recognized family.
    return std::nullopt;
  }
  if (!cert) return cert;
  for (const FrequencyIndex& w : cert->witnesses)
    if (!eval_block(spec, w).is_singular())
      throw Error(ErrorCode::Precision, "hypo", "certificate witness " + to_string(w.label) + " failed evaluation");
  return cert;
}

double estimate_h(const OperatorSpec& spec, const SpectralModel& model, const Window& window, double tol) {
  if (certify(spec)) return -std::numeric_limits<double>::infinity();
  const auto samples = gain_samples(make_symbol(spec, model), model, window);
  return fit_growth(samples, model.nu, tol).m;
}

Verdict verdict(const OperatorSpec& spec, std::span<const GainSample> samples, double nu, double tol) {
  if (auto cert = certify(spec)) return {std::move(*cert), {}};
  std::vector<FrequencyIndex> singular = singular_scan(samples, tol);
  if (!samples.empty() && !singular.empty()) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    for (const GainSample& s : samples) {
      xmin = std::min(xmin, std::log1p(s.freq.lambda));
      xmax = std::max(xmax, std::log1p(s.freq.lambda));
    }
    if (std::log1p(singular.back().lambda) >= 0.5 * (xmin + xmax))
      return {Inconclusive{"singular frequencies persist into the upper half of the window", singular}, singular};
  }
  try {
    const GrowthFit fit = fit_growth(samples, nu, tol);
    return {EmpiricalGH{fit, fit.m}, singular};
  } catch (const NoFit& e) {
    return {Inconclusive{e.what(), singular}, singular};
  }
}

Verdict verdict(const OperatorSpec& spec, const SpectralModel& model, const Window& window, double tol) {
  if (auto cert = certify(spec)) return {std::move(*cert), {}};
  const auto samples = gain_samples(make_symbol(spec, model), model, window);
  return verdict(spec, samples, model.nu, tol);
}

}  // namespace ghypo

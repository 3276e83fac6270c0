#include "ghypo/spectral_models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "ghypo/error.hpp"

namespace ghypo {

std::string to_string(ModelKind kind) { return kind == ModelKind::Torus2 ? "torus2" : "su2"; }

std::string to_string(const FrequencyLabel& label) {
  if (const auto* t = std::get_if<Torus2Label>(&label)) {
    return "(" + std::to_string(t->xi) + "," + std::to_string(t->eta) + ")";
  }
  const int tl = std::get<Su2Label>(label).twice_ell;
  return tl % 2 == 0 ? "ell=" + std::to_string(tl / 2) : "ell=" + std::to_string(tl) + "/2";
}

int FrequencyIndex::block_dim() const {
  if (const auto* s = std::get_if<Su2Label>(&label)) return s->twice_ell + 1;
  return 1;
}

double FrequencyIndex::ell() const {
  if (const auto* s = std::get_if<Su2Label>(&label)) return 0.5 * s->twice_ell;
  return std::sqrt(lambda);
}

double su2_lambda(int twice_ell) {
  // ell (ell + 1) = tl (tl + 2) / 4, exact in double for any realistic tl.
  return 0.25 * static_cast<double>(twice_ell) * static_cast<double>(twice_ell + 2);
}

int su2_dim(int twice_ell) { return (twice_ell + 1) * (twice_ell + 1); }

Window Window::lambda(double cutoff) {
  if (!(cutoff >= 0.0)) throw Error(ErrorCode::Precondition, "spectral_models", "lambda cutoff must be >= 0");
  Window w;
  w.lambda_cutoff_ = cutoff;
  return w;
}

Window Window::su2_ell(double max_ell) {
  if (!(max_ell >= 0.0)) throw Error(ErrorCode::Precondition, "spectral_models", "ell cutoff must be >= 0");
  const int tl = static_cast<int>(std::floor(2.0 * max_ell + 1e-9));
  return lambda(su2_lambda(tl));
}

Window Window::torus_l1(int radius) {
  if (radius < 0) throw Error(ErrorCode::Precondition, "spectral_models", "l1 radius must be >= 0");
  Window w;
  w.lambda_cutoff_ = static_cast<double>(radius) * radius;
  w.l1_radius_ = radius;
  return w;
}

bool Window::contains(const FrequencyIndex& freq) const {
  if (freq.lambda > lambda_cutoff_) return false;
  if (l1_radius_) {
    const auto* t = std::get_if<Torus2Label>(&freq.label);
    if (t && std::abs(t->xi) + std::abs(t->eta) > *l1_radius_) return false;
  }
  return true;
}

double Window::complete_lambda() const {
  if (!l1_radius_) return lambda_cutoff_;
  // The l1 ball of radius R contains the disk of radius R / sqrt(2).
  return std::min(lambda_cutoff_, 0.5 * static_cast<double>(*l1_radius_) * *l1_radius_);
}

std::string Window::describe() const {
  std::ostringstream os;
  if (l1_radius_) {
    os << "|xi|+|eta|<=" << *l1_radius_;
  } else {
    os << "lambda<=" << lambda_cutoff_;
  }
  return os.str();
}

Window parse_window(const std::string& text) {
  try {
    std::size_t used = 0;
    if (text.rfind("ell:", 0) == 0) {
      const double v = std::stod(text.substr(4), &used);
      if (used + 4 == text.size()) return Window::su2_ell(v);
    } else if (text.rfind("l1:", 0) == 0) {
      const int v = std::stoi(text.substr(3), &used);
      if (used + 3 == text.size()) return Window::torus_l1(v);
    } else {
      const double v = std::stod(text, &used);
      if (used == text.size()) return Window::lambda(v);
    }
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::Schema, "spectral_models", "malformed cutoff '" + text + "' (expected X, ell:X or l1:R)");
}

namespace {

std::int64_t isqrt64(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<FrequencyIndex> enumerate_torus(double cutoff) {
  const auto r = static_cast<int>(std::floor(std::sqrt(cutoff) + 1e-9));
  std::vector<FrequencyIndex> out;
  out.reserve(static_cast<std::size_t>(3.15 * (r + 1) * (r + 1)) + 8);
  for (int xi = -r; xi <= r; ++xi) {
    for (int eta = -r; eta <= r; ++eta) {
      const double lam = static_cast<double>(xi) * xi + static_cast<double>(eta) * eta;
      if (lam <= cutoff) out.push_back({0, lam, 1, Torus2Label{xi, eta}});
    }
  }
  std::sort(out.begin(), out.end(), [](const FrequencyIndex& a, const FrequencyIndex& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return std::get<Torus2Label>(a.label) < std::get<Torus2Label>(b.label);
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].ordinal = static_cast<std::int64_t>(i);
  return out;
}

std::vector<FrequencyIndex> enumerate_su2(double cutoff) {
  std::vector<FrequencyIndex> out;
  for (int tl = 0; su2_lambda(tl) <= cutoff; ++tl) {
    out.push_back({tl, su2_lambda(tl), su2_dim(tl), Su2Label{tl}});
  }
  return out;
}

}  // namespace

std::vector<FrequencyIndex> enumerate_frequencies(const SpectralModel& model, double lambda_cutoff) {
  if (!(lambda_cutoff >= 0.0)) {
    throw Error(ErrorCode::Precondition, "spectral_models", "lambda cutoff must be >= 0");
  }
  return model.kind == ModelKind::Torus2 ? enumerate_torus(lambda_cutoff) : enumerate_su2(lambda_cutoff);
}

std::vector<FrequencyIndex> enumerate_frequencies(const SpectralModel& model, const Window& window) {
  if (window.l1_radius() && model.kind != ModelKind::Torus2) {
    throw Error(ErrorCode::Precondition, "spectral_models", "l1 windows apply to the torus only");
  }
  auto out = enumerate_frequencies(model, window.lambda_cutoff());
  if (window.l1_radius()) {
    std::erase_if(out, [&](const FrequencyIndex& f) { return !window.contains(f); });
  }
  return out;
}

FrequencyIndex make_frequency(const FrequencyLabel& label) {
  if (const auto* s = std::get_if<Su2Label>(&label)) {
    if (s->twice_ell < 0) throw Error(ErrorCode::Precondition, "spectral_models", "twice_ell must be >= 0");
    return {s->twice_ell, su2_lambda(s->twice_ell), su2_dim(s->twice_ell), *s};
  }
  const auto t = std::get<Torus2Label>(label);
  const std::int64_t lam = static_cast<std::int64_t>(t.xi) * t.xi + static_cast<std::int64_t>(t.eta) * t.eta;
  // Column by column: points strictly inside the shell, then shell points ordered before t.
  const std::int64_t r = isqrt64(lam);
  std::int64_t before = 0;
  for (std::int64_t xi = -r; xi <= r; ++xi) {
    const std::int64_t rest = lam - xi * xi;
    const std::int64_t e = isqrt64(rest);
    const bool on_shell = e * e == rest;
    before += on_shell ? std::max<std::int64_t>(2 * e - 1, 0) : 2 * e + 1;
    if (on_shell && xi < t.xi) before += e == 0 ? 1 : 2;
    if (on_shell && xi == t.xi && e > 0 && t.eta == e) before += 1;
  }
  return {before, static_cast<double>(lam), 1, t};
}

double bracket(const FrequencyIndex& freq) { return std::sqrt(1.0 + freq.lambda); }

int Shell::dim() const {
  int d = 0;
  for (const auto& f : members) d += f.dim;
  return d;
}

std::vector<Shell> group_by_shell(std::span<const FrequencyIndex> freqs) {
  std::vector<Shell> shells;
  for (const auto& f : freqs) {
    if (shells.empty() || shells.back().lambda != f.lambda) shells.push_back({f.lambda, {}});
    shells.back().members.push_back(f);
  }
  return shells;
}

}  // namespace ghypo

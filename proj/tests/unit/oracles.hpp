// Independent reference computations used as test oracles.
#ifndef GHYPO_TEST_ORACLES_HPP
#define GHYPO_TEST_ORACLES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline CMat random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  return a;
}

inline CVec random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = {g(rng), g(rng)};
  return v / v.norm();
}

/// min over unit v of ||A v||: best of many sphere samples, refined by
/// inverse iteration on A^H A solved with LU (no SVD involved).
inline double sphere_min_gain(const CMat& a, std::mt19937_64& rng, int samples = 2000) {
  const int n = static_cast<int>(a.cols());
  CVec best = random_unit(n, rng);
  double best_val = (a * best).norm();
  for (int s = 0; s < samples; ++s) {
    CVec v = random_unit(n, rng);
    const double val = (a * v).norm();
    if (val < best_val) best_val = val, best = v;
  }
  const CMat gram = a.adjoint() * a;
  Eigen::FullPivLU<CMat> lu(gram);
  if (!lu.isInvertible()) return 0.0;
  CVec v = best;
  for (int it = 0; it < 500; ++it) {
    CVec w = lu.solve(v);
    v = w / w.norm();
  }
  return std::min(best_val, (a * v).norm());
}

/// All (u, m) with u <= u_max, m >= 1 and u^2 - D m^2 = 1, by direct search.
inline std::vector<std::pair<std::int64_t, std::int64_t>> pell_brute(std::int64_t D, std::int64_t u_max) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t u = 2; u <= u_max; ++u) {
    const std::int64_t rhs = u * u - 1;
    if (rhs % D) continue;
    const std::int64_t m2 = rhs / D;
    auto m = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(m2))));
    for (std::int64_t c = std::max<std::int64_t>(1, m - 2); c <= m + 2; ++c)
      if (c * c == m2) out.emplace_back(u, c);
  }
  return out;
}

/// twice_ell values in [0, max_twice_ell] where ell(ell+1) - 2 m^2 = 0 for some
/// admissible m; integer arithmetic on 4 ell(ell+1) = tl(tl+2), 4 m^2 = tm^2.
inline std::set<int> pell_levels_brute(int max_twice_ell) {
  std::set<int> out;
  for (int tl = 0; tl <= max_twice_ell; ++tl)
    for (int tm = -tl; tm <= tl; tm += 2)
      if (static_cast<std::int64_t>(tl) * (tl + 2) == 2LL * tm * tm) out.insert(tl);
  return out;
}

/// (ell, m) with the smallest |ell(ell+1) - m^2 * b| over admissible m, long double.
inline double su2_diag_min(int tl, double a, double b) {
  double best = INFINITY;
  const double ell = tl / 2.0;
  for (int tm = -tl; tm <= tl; tm += 2) {
    const double m = tm / 2.0;
    best = std::min(best, std::abs(a * ell * (ell + 1) - b * m * m));
  }
  return best;
}

/// Brute-force torus lattice points with xi^2 + eta^2 <= cutoff.
inline std::vector<std::pair<int, int>> disk(double cutoff) {
  std::vector<std::pair<int, int>> out;
  const int r = static_cast<int>(std::floor(std::sqrt(cutoff))) + 1;
  for (int x = -r; x <= r; ++x)
    for (int y = -r; y <= r; ++y)
      if (x * x + y * y <= cutoff) out.emplace_back(x, y);
  return out;
}

}  // namespace oracle

#endif  // GHYPO_TEST_ORACLES_HPP

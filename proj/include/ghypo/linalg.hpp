#ifndef GHYPO_LINALG_HPP
#define GHYPO_LINALG_HPP

#include <Eigen/Dense>
#include <complex>

namespace ghypo {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = Matrix<Complex>;
using ComplexVector = Vector<Complex>;

/// Relative threshold below which a singular value counts as zero:
/// s <= kSingularTol * max(1, ||sigma||).
inline constexpr double kSingularTol = 1e-12;

/// Singular values in decreasing order.
template <typename Derived>
Vector<typename Eigen::NumTraits<typename Derived::Scalar>::Real> singular_values(
    const Eigen::MatrixBase<Derived>& m) {
  using Plain = Matrix<typename Derived::Scalar>;
  if (m.rows() == 0 || m.cols() == 0) return {};
  if (m.rows() <= 16) return Eigen::JacobiSVD<Plain>(m).singularValues();
  return Eigen::BDCSVD<Plain>(m).singularValues();
}

/// m(sigma) = inf over unit v of ||sigma v||, the smallest singular value.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real smallest_gain(const Eigen::MatrixBase<Derived>& m) {
  const auto s = singular_values(m);
  return s.size() == 0 ? 0 : s(s.size() - 1);
}

/// Largest singular value.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real operator_norm(const Eigen::MatrixBase<Derived>& m) {
  const auto s = singular_values(m);
  return s.size() == 0 ? 0 : s(0);
}

/// Rotates v so that its first component with modulus above tol is real positive.
template <typename Derived>
void normalize_phase(Eigen::MatrixBase<Derived>& v, double tol = 1e-12) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > tol) {
      v *= std::conj(v(i)) / std::abs(v(i));
      return;
    }
  }
}

}  // namespace ghypo

#endif  // GHYPO_LINALG_HPP

// bergman: dense matrix exponentials.
//
// Two routes are used in this library:
//  * expm()            — scaling-and-squaring with Pade approximation
//                        (Eigen unsupported MatrixFunctions, Higham 2005),
//                        for small general matrices of norm <= ~20.
//  * expm_skew()       — exp(A) for anti-Hermitian A through the unitary
//                        eigendecomposition of the Hermitian matrix -iA;
//                        the result is unitary to machine precision and is
//                        the route used for Fock-space operators.
#ifndef BERGMAN_MATRIX_EXP_HPP
#define BERGMAN_MATRIX_EXP_HPP

#include <unsupported/Eigen/MatrixFunctions>

#include "bergman/types.hpp"

namespace bergman {

template <typename Derived>
MatrixXc expm(const Eigen::MatrixBase<Derived>& a) {
  return MatrixXc(a).exp();
}

/// exp(A) for anti-Hermitian A.  A = i H with H Hermitian, so
/// exp(A) = V diag(e^{i lambda}) V^dagger with real lambda.
inline MatrixXc expm_skew(const MatrixXc& a) {
  const MatrixXc h = Complex(0, -1) * a;
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
  if (es.info() != Eigen::Success)
    throw InternalError("expm_skew: eigensolver failed");
  const VectorXr lam = es.eigenvalues();
  VectorXc phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    phases(i) = Complex(std::cos(lam(i)), std::sin(lam(i)));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

/// exp(A) v for anti-Hermitian A, same route without forming the square.
inline VectorXc expm_skew_apply(const MatrixXc& a, const VectorXc& v) {
  const MatrixXc h = Complex(0, -1) * a;
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
  if (es.info() != Eigen::Success)
    throw InternalError("expm_skew_apply: eigensolver failed");
  const VectorXr lam = es.eigenvalues();
  VectorXc w = es.eigenvectors().adjoint() * v;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    w(i) *= Complex(std::cos(lam(i)), std::sin(lam(i)));
  return es.eigenvectors() * w;
}

}  // namespace bergman

#endif

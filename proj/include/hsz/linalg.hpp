#pragma once

#include <Eigen/Dense>

namespace hsz {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Dense kernels used across the project. Singular values come from a
// two-sided Jacobi SVD, which is accurate to roundoff on these small sizes.

Eigen::VectorXd singular_values(const CMatrix& a);
double op_norm(const CMatrix& a);
double sigma_min(const CMatrix& a);

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& a);

/// Largest lambda with A x = lambda B x, for Hermitian A and Hermitian
/// positive definite B. Reduces through the Cholesky factor of B.
double generalized_max_eigenvalue(const CMatrix& a, const CMatrix& b);

}  // namespace hsz

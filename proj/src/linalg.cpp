#include "hsz/linalg.hpp"

#include "hsz/error.hpp"

namespace hsz {

Eigen::VectorXd singular_values(const CMatrix& a) {
  if (a.size() == 0) return {};
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues();
}

double op_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

double sigma_min(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  const auto s = singular_values(a);
  return s(s.size() - 1);
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double generalized_max_eigenvalue(const CMatrix& a, const CMatrix& b) {
  Eigen::LLT<CMatrix> llt(b);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::degenerate, "Gram matrix is not positive definite");
  // C = L^{-1} A L^{-*}
  CMatrix x = llt.matrixL().solve(a);
  CMatrix c = llt.matrixL().solve(x.adjoint()).adjoint();
  c = 0.5 * (c + c.adjoint()).eval();
  return hermitian_eigenvalues(c).maxCoeff();
}

}  // namespace hsz

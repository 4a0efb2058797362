#include "lagmech/numkernel/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace lagmech::numkernel {

EigenRange symmetric_eigen_range(const Matrix<double>& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = m(i, j);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  const Eigen::ArrayXd mags = solver.eigenvalues().array().abs();
  return {mags.minCoeff(), mags.maxCoeff()};
}

}  // namespace lagmech::numkernel
